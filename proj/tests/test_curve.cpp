#include <doctest.h>

#include <random>

#include "ffell/curve.hpp"

using namespace ffell;

namespace {

Curve make_hyper(FieldPtr F, std::vector<Elem> h, std::vector<Elem> f, int genus) {
    CurveSpec s;
    s.field = F;
    s.genus = genus;
    s.h = Poly(F.get(), std::move(h));
    s.f = Poly(F.get(), std::move(f));
    return Curve::validate(s);
}

// independent brute-force count of the projective points of y^2 + hy = f
// (affine solutions plus the single point at infinity of the imaginary model)
std::uint64_t brute_count(const Curve& c, const FieldPtr& E) {
    const Field* F = E.get();
    std::uint64_t n = 1;  // the place at infinity (delta = 1, one smooth point)
    auto lift = [&](const Poly& a, Elem x) {
        Elem v = 0, xp = 1;
        for (int i = 0; i <= a.degree(); ++i) {
            v = F->add(v, F->mul(a.coeff(i), xp));
            xp = F->mul(xp, x);
        }
        return v;
    };
    for (Elem x = 0; x < F->q(); ++x)
        for (Elem y = 0; y < F->q(); ++y) {
            Elem lhs = F->add(F->mul(y, y), F->mul(lift(c.h(), x), y));
            if (lhs == lift(c.f(), x)) ++n;
        }
    return n;
}

}  // namespace

TEST_CASE("validation rejects bad hyperelliptic models") {
    auto F3 = Field::prime_field(3);
    // f not squarefree in odd characteristic: y^2 = x^3 (cusp)
    CHECK_THROWS_AS(make_hyper(F3, {}, {0, 0, 0, 1}, 1), CurveError);
    // h must vanish in odd characteristic
    CHECK_THROWS_AS(make_hyper(F3, {1}, {1, 1, 0, 1}, 1), CurveError);
    // wrong genus for the degree
    CHECK_THROWS_AS(make_hyper(F3, {}, {1, 2, 0, 1}, 2), CurveError);
    auto F2 = Field::prime_field(2);
    // h = 0 in characteristic 2 (inseparable)
    CHECK_THROWS_AS(make_hyper(F2, {}, {1, 1, 0, 1}, 1), CurveError);
    // singular char-2 model: y^2 + x y = x^3 has a node at the origin
    CHECK_THROWS_AS(make_hyper(F2, {0, 1}, {0, 0, 0, 1}, 1), CurveError);
    // good model
    CHECK_NOTHROW(make_hyper(F2, {1}, {1, 1, 0, 1}, 1));
}

TEST_CASE("point counts match a brute-force oracle") {
    std::mt19937_64 rng(31);
    int tried = 0;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 9ull}) {
        FieldPtr F = q == 9 ? Field::canonical_extension(Field::prime_field(3), 2)
                            : Field::prime_field(q);
        for (int g : {1, 2}) {
            for (int it = 0; it < 20 && tried < 60; ++it) {
                std::vector<Elem> h(static_cast<std::size_t>(g) + 1),
                    f(2 * static_cast<std::size_t>(g) + 2);
                for (auto& e : h) e = rng() % q;
                if (F->p() != 2) h.assign(h.size(), 0);
                for (auto& e : f) e = rng() % q;
                f.back() = 1;
                CurveSpec s;
                s.field = F;
                s.genus = g;
                s.h = Poly(F.get(), h);
                s.f = Poly(F.get(), f);
                try {
                    Curve c = Curve::validate(s);
                    CHECK(c.count_points(1) == brute_count(c, F));
                    auto E = Field::canonical_extension(F, 2);
                    CHECK(c.count_points(2) == brute_count(c, E));
                    CHECK(c.count_points(2) == c.count_points_serial(2));
                    ++tried;
                } catch (const CurveError&) {
                }
            }
        }
    }
    CHECK(tried >= 30);
}

TEST_CASE("finite place classification matches quadratic factorization") {
    auto F7 = Field::prime_field(7);
    Curve c = make_hyper(F7, {}, {4, 0, 0, 1}, 1);  // y^2 = x^3 + 4
    const Field* F = F7.get();
    for (Elem a = 0; a < 7; ++a) {
        Poly p(F, {F->neg(a), 1});  // x - a
        auto places = c.places_above(p);
        // y^2 = a^3 + 4 mod (x - a): split iff QR, ramified iff zero
        Elem rhs = F->add(F->mul(F->mul(a, a), a), 4);
        if (rhs == 0) {
            REQUIRE(places.size() == 1);
            CHECK(places[0].ram == 2);
        } else if (F->pow(rhs, 3) == 1) {  // (q-1)/2 = 3
            CHECK(places.size() == 2);
        } else {
            REQUIRE(places.size() == 1);
            CHECK(places[0].degree == 2);
        }
    }
    auto inf = c.places_at_infinity();
    REQUIRE(inf.size() == 1);
    CHECK(inf[0].degree == 1);
    CHECK(c.delta() == 1);
}

TEST_CASE("Hermitian plane curve: N_1 = 28 over F_9") {
    auto F9 = Field::canonical_extension(Field::prime_field(3), 2);
    const Field* F = F9.get();
    CurveSpec s;
    s.field = F9;
    s.kind = CurveKind::Plane;
    s.genus = 3;
    // y^3 + y - x^4 = 0
    s.cy = {Poly(F, {0, 0, 0, 0, F->neg(1)}), Poly::constant(F, 1), Poly::zero(F),
            Poly::constant(F, 1)};
    Curve c = Curve::validate(s);
    CHECK(c.count_points(1) == 28);
    CHECK(c.count_points(1) == c.count_points_serial(1));
}

TEST_CASE("plane conic with no rational point at infinity has delta 2") {
    auto F3 = Field::prime_field(3);
    const Field* F = F3.get();
    CurveSpec s;
    s.field = F3;
    s.kind = CurveKind::Plane;
    s.genus = 0;
    // y^2 + x^2 + 1 = 0
    s.cy = {Poly(F, {1, 0, 1}), Poly::zero(F), Poly::constant(F, 1)};
    Curve c = Curve::validate(s);
    CHECK(c.delta() == 2);
    CHECK_THROWS_AS(c.require_class_ops(), CurveError);
}

TEST_CASE("genus-0 hyperelliptic model is accepted") {
    auto F5 = Field::prime_field(5);
    Curve c = make_hyper(F5, {}, {2, 1}, 0);  // y^2 = x + 2
    CHECK(c.count_points(1) == 6);            // P^1 over F_5
    CHECK(c.delta() == 1);
}
