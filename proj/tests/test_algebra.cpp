#include <doctest.h>

#include <random>

#include "ffell/polymat.hpp"

using namespace ffell;

TEST_CASE("canonical moduli are the lexicographically smallest irreducibles") {
    auto F3 = Field::prime_field(3);
    auto F9 = Field::canonical_extension(F3, 2);
    CHECK(F9->modulus() == std::vector<Elem>{1, 0});  // z^2 + 1
    auto F2 = Field::prime_field(2);
    auto F4 = Field::canonical_extension(F2, 2);
    CHECK(F4->modulus() == std::vector<Elem>{1, 1});  // z^2 + z + 1
    auto F8 = Field::canonical_extension(F2, 3);
    CHECK(F8->modulus() == std::vector<Elem>{1, 1, 0});  // z^3 + z + 1
    auto F49 = Field::canonical_extension(Field::prime_field(7), 2);
    CHECK(F49->q() == 49);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(7);
    for (std::uint64_t q : {4ull, 9ull, 25ull, 49ull}) {
        std::uint64_t p = q == 4 ? 2 : q == 9 ? 3 : q == 25 ? 5 : 7;
        auto F = Field::canonical_extension(Field::prime_field(p), 2);
        REQUIRE(F->q() == q);
        for (int i = 0; i < 200; ++i) {
            Elem a = rng() % q, b = rng() % q, c = rng() % q;
            CHECK(F->add(a, F->neg(a)) == 0);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(a, b) == F->mul(b, a));
            if (a != 0) {
                CHECK(F->mul(a, F->inv(a)) == 1);
                CHECK(F->pow(a, q - 1) == 1);
            }
        }
    }
}

TEST_CASE("degree-2 Galois conjugation is the q-power involution") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        auto F = Field::canonical_extension(Field::prime_field(p), 2);
        for (Elem a = 0; a < F->q(); ++a) {
            CHECK(F->conj2(a) == F->pow(a, p));
            CHECK(F->conj2(F->conj2(a)) == a);
            // trace and norm land in the prime field (encoding < p)
            CHECK(F->add(a, F->conj2(a)) < p);
            CHECK(F->mul(a, F->conj2(a)) < p);
        }
        // fixed field is exactly F_p
        for (Elem a = 0; a < F->q(); ++a)
            CHECK((F->conj2(a) == a) == (a < p));
    }
}

TEST_CASE("same_field distinguishes structure, not object identity") {
    auto F3 = Field::prime_field(3);
    auto A = Field::canonical_extension(F3, 2);
    auto B = Field::canonical_extension(Field::prime_field(3), 2);
    CHECK(A.get() != B.get());
    CHECK(same_field(A.get(), B.get()));
    CHECK_FALSE(same_field(A.get(), F3.get()));
    CHECK_FALSE(same_field(A.get(), Field::canonical_extension(F3, 3).get()));
}

namespace {
Poly random_poly(const Field* F, int deg, std::mt19937_64& rng) {
    std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
    for (auto& e : c) e = rng() % F->q();
    return Poly(F, std::move(c));
}
}  // namespace

TEST_CASE("xgcd identity and gcd of coprime polynomials") {
    std::mt19937_64 rng(11);
    auto F5 = Field::prime_field(5);
    for (int i = 0; i < 100; ++i) {
        Poly a = random_poly(F5.get(), 1 + static_cast<int>(rng() % 6), rng);
        Poly b = random_poly(F5.get(), 1 + static_cast<int>(rng() % 6), rng);
        if (a.is_zero() || b.is_zero()) continue;
        XgcdResult r = poly_xgcd(a, b);
        Poly lhs = poly_add(poly_mul(r.s, a), poly_mul(r.t, b));
        CHECK(poly_sub(lhs, r.g).is_zero());
        CHECK(poly_mod(a, r.g).is_zero());
        CHECK(poly_mod(b, r.g).is_zero());
    }
}

TEST_CASE("factorization round trip and irreducibility") {
    std::mt19937_64 rng(13);
    for (std::uint64_t q : {2ull, 3ull, 9ull}) {
        FieldPtr F = q == 9 ? Field::canonical_extension(Field::prime_field(3), 2)
                            : Field::prime_field(q);
        for (int i = 0; i < 60; ++i) {
            Poly a = random_poly(F.get(), 2 + static_cast<int>(rng() % 7), rng);
            if (a.degree() < 1) continue;
            auto fac = poly_factor(a);
            Poly prod = Poly::constant(F.get(), a.coeff(a.degree()));
            for (auto& [p, e] : fac) {
                CHECK(p.is_monic());
                CHECK(poly_is_irreducible(p));
                for (int k = 0; k < e; ++k) prod = poly_mul(prod, p);
            }
            CHECK(poly_sub(prod, a).is_zero());
        }
    }
}

TEST_CASE("Frobenius lift of polynomials fixes base coefficients") {
    auto F9 = Field::canonical_extension(Field::prime_field(3), 2);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        Poly a = random_poly(F9.get(), 4, rng);
        Poly c = poly_map(F9.get(), a, [&](Elem e) { return F9->conj2(e); });
        Poly cc = poly_map(F9.get(), c, [&](Elem e) { return F9->conj2(e); });
        CHECK(poly_sub(cc, a).is_zero());
    }
}

TEST_CASE("HNF is idempotent and preserves the lattice") {
    std::mt19937_64 rng(19);
    auto F4 = Field::canonical_extension(Field::prime_field(2), 2);
    for (int i = 0; i < 40; ++i) {
        PolyMatrix m(F4.get(), 2);
        for (int r = 0; r < 3; ++r)
            m.add_row({random_poly(F4.get(), static_cast<int>(rng() % 4), rng),
                       random_poly(F4.get(), static_cast<int>(rng() % 4), rng)});
        PolyMatrix h = matrix_hnf(m);
        PolyMatrix h2 = matrix_hnf(h);
        CHECK(h == h2);
        // every original row is in the HNF lattice
        for (const auto& row : m.rows) CHECK(hnf_contains(h, row));
    }
}

TEST_CASE("lattice_solve returns exact coordinates") {
    std::mt19937_64 rng(23);
    auto F3 = Field::prime_field(3);
    for (int i = 0; i < 60; ++i) {
        PolyMatrix gens(F3.get(), 2);
        gens.add_row({random_poly(F3.get(), 2, rng), random_poly(F3.get(), 2, rng)});
        gens.add_row({random_poly(F3.get(), 2, rng), random_poly(F3.get(), 2, rng)});
        Poly c0 = random_poly(F3.get(), 1, rng), c1 = random_poly(F3.get(), 1, rng);
        std::vector<Poly> v = {
            poly_add(poly_mul(c0, gens.rows[0][0]), poly_mul(c1, gens.rows[1][0])),
            poly_add(poly_mul(c0, gens.rows[0][1]), poly_mul(c1, gens.rows[1][1]))};
        auto sol = lattice_solve(gens, v);
        REQUIRE(sol.has_value());
        std::vector<Poly> back = {Poly::zero(F3.get()), Poly::zero(F3.get())};
        for (std::size_t g = 0; g < gens.rows.size(); ++g)
            for (int k = 0; k < 2; ++k)
                back[static_cast<std::size_t>(k)] =
                    poly_add(back[static_cast<std::size_t>(k)],
                             poly_mul((*sol)[g], gens.rows[g][static_cast<std::size_t>(k)]));
        CHECK(poly_sub(back[0], v[0]).is_zero());
        CHECK(poly_sub(back[1], v[1]).is_zero());
    }
}
