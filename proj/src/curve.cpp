#include "ffell/curve.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffell {

namespace {

constexpr std::uint64_t kCountBound = 1ull << 20;  // largest q^d for counting
constexpr std::uint64_t kSingularScanBound = 1ull << 20;

// total degree of a plane model C(x,y) = sum cy[i](x) y^i
int plane_total_degree(const std::vector<Poly>& cy) {
    int n = 0;
    for (std::size_t i = 0; i < cy.size(); ++i)
        if (!cy[i].is_zero()) n = std::max(n, cy[i].degree() + static_cast<int>(i));
    return n;
}

// binary form b(t) = B(1,t) of the top-degree part, plus the Y^n coefficient
std::pair<Poly, Elem> plane_infinity_form(const Field* F, const std::vector<Poly>& cy) {
    int n = plane_total_degree(cy);
    std::vector<Elem> b(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < cy.size(); ++i) {
        int j = n - static_cast<int>(i);
        if (j >= 0) b[i] = cy[i].coeff(j);
    }
    Elem top_y = b[static_cast<std::size_t>(n)];
    return {Poly(F, std::move(b)), top_y};
}

}  // namespace

bool Curve::supports_class_ops() const {
    return spec_.kind == CurveKind::Hyperelliptic && spec_.infinity.is_default && delta_ == 1;
}

void Curve::require_class_ops() const {
    if (spec_.kind != CurveKind::Hyperelliptic)
        throw CurveError("ideal/Jacobian machinery requires a hyperelliptic imaginary model");
    if (!spec_.infinity.is_default)
        throw CurveError("class-group operations require the default place at infinity");
    if (delta_ % 2 == 0) throw DeltaParityError("delta is even: no elliptic points exist");
}

Curve Curve::validate(const CurveSpec& spec) {
    if (!spec.field) throw CurveError("curve has no base field");
    if (spec.genus < 0) throw CurveError("genus must be non-negative");
    const Field* F = spec.field.get();
    Curve c(spec);

    if (spec.kind == CurveKind::Hyperelliptic) {
        int g = spec.genus;
        if (spec.f.degree() != 2 * g + 1)
            throw CurveError("imaginary model requires deg f = 2g+1 (got deg f = " +
                             std::to_string(spec.f.degree()) + ")");
        if (!spec.f.is_monic()) throw CurveError("f must be monic");
        if (spec.h.degree() > g) throw CurveError("imaginary model requires deg h <= g");
        if (F->p() != 2) {
            if (!spec.h.is_zero()) throw CurveError("odd characteristic model must have h = 0");
            if (!poly_is_squarefree(spec.f)) throw CurveError("singular model: f is not squarefree");
        } else {
            if (spec.h.is_zero()) throw CurveError("characteristic-2 model must have h != 0");
            // a singular point has h(x0) = 0, y0^2 = f(x0), h'(x0) y0 = f'(x0)
            Poly hp = poly_deriv(spec.h), fp = poly_deriv(spec.f);
            for (auto& [p, m] : poly_factor(spec.h)) {
                auto R = Field::extension(spec.field, std::vector<Elem>(p.c.begin(), p.c.end() - 1));
                auto lift = [&](const Poly& a) {
                    Poly r = poly_mod(a, p);
                    std::vector<Elem> d(static_cast<std::size_t>(p.degree()), 0);
                    for (int i = 0; i < p.degree(); ++i) d[static_cast<std::size_t>(i)] = r.coeff(i);
                    return R->from_digits(d);
                };
                Elem y0 = R->pow(lift(spec.f), R->q() / 2);  // unique square root in char 2
                if (R->mul(lift(hp), y0) == lift(fp)) throw CurveError("singular model: singular point above " + poly_to_string(p));
            }
        }
        c.delta_ = 1;  // unique ramified place over x = infinity
    } else {
        if (spec.cy.size() < 3) throw CurveError("plane model must have y-degree >= 2");
        const Poly& top = spec.cy.back();
        if (top.degree() != 0 || top.coeff(0) != 1) throw CurveError("plane model must be monic in y");
        int n = plane_total_degree(spec.cy);
        if (spec.genus != (n - 1) * (n - 2) / 2)
            throw CurveError("plane model genus must equal (n-1)(n-2)/2 for the smooth projective plane curve");
        // smoothness scan over small-degree extensions (bounded exhaustive check)
        Poly cx_check;  // partials in x and y, evaluated pointwise below
        std::vector<Poly> cyx(spec.cy.size());
        for (std::size_t i = 0; i < spec.cy.size(); ++i) cyx[i] = poly_deriv(spec.cy[i]);
        for (int d = 1; d <= 4; ++d) {
            std::uint64_t Qd = 1;
            bool overflow = false;
            for (int i = 0; i < 2 * d; ++i) {
                Qd *= F->q();
                if (Qd > kSingularScanBound) { overflow = true; break; }
            }
            if (overflow) break;
            FieldPtr E = d == 1 ? spec.field : Field::canonical_extension(spec.field, d);
            std::uint64_t Q = E->q();
            for (Elem x = 0; x < Q; ++x) {
                // values of C(x,.), C_x(x,.), C_y(x,.) as polynomials in y over E
                std::vector<Elem> cv(spec.cy.size()), cxv(spec.cy.size());
                for (std::size_t i = 0; i < spec.cy.size(); ++i) {
                    Poly pe(E.get(), spec.cy[i].c), pxe(E.get(), cyx[i].c);
                    cv[i] = poly_eval(pe, x);
                    cxv[i] = poly_eval(pxe, x);
                }
                for (Elem y = 0; y < Q; ++y) {
                    Elem v = 0, vx = 0, vy = 0, yp = 1;
                    for (std::size_t i = 0; i < spec.cy.size(); ++i) {
                        v = E->add(v, E->mul(cv[i], yp));
                        vx = E->add(vx, E->mul(cxv[i], yp));
                        if (i + 1 < spec.cy.size()) {
                            Elem ip1 = E->from_int(static_cast<long long>(i + 1));
                            vy = E->add(vy, E->mul(E->mul(cv[i + 1], ip1), yp));
                        }
                        yp = E->mul(yp, y);
                    }
                    if (v == 0 && vx == 0 && vy == 0)
                        throw CurveError("singular model: affine singular point found over extension of degree " +
                                         std::to_string(d));
                }
            }
            // points at infinity: homogenize and test the partial derivatives
            auto [b, top_y] = plane_infinity_form(F, spec.cy);
            Poly bE(E.get(), b.c);
            std::vector<Elem> inf_ts = poly_roots(bE);
            std::vector<std::pair<Elem, Elem>> inf_pts;  // (X,Y) with Z=0, X=1 or (0,1)
            for (Elem t : inf_ts) inf_pts.emplace_back(1, t);
            if (top_y == 0) inf_pts.emplace_back(0, 1);
            for (auto [X, Y] : inf_pts) {
                Elem FX = 0, FY = 0, FZ = 0;
                for (std::size_t i = 0; i < spec.cy.size(); ++i) {
                    for (int j = 0; j <= spec.cy[i].degree(); ++j) {
                        Elem a = spec.cy[i].coeff(j);
                        if (a == 0) continue;
                        int k = n - static_cast<int>(i) - j;
                        auto mono = [&](int xj, int yi, int zk) -> Elem {
                            if (zk != 0) return 0;  // Z = 0
                            if (xj < 0 || yi < 0 || zk < 0) return 0;
                            return E->mul(E->pow(X, static_cast<std::uint64_t>(xj)),
                                          E->pow(Y, static_cast<std::uint64_t>(yi)));
                        };
                        FX = E->add(FX, E->mul(E->mul(a, E->from_int(j)), mono(j - 1, static_cast<int>(i), k)));
                        FY = E->add(FY, E->mul(E->mul(a, E->from_int(static_cast<long long>(i))),
                                               mono(j, static_cast<int>(i) - 1, k)));
                        FZ = E->add(FZ, E->mul(E->mul(a, E->from_int(k)), mono(j, static_cast<int>(i), k - 1)));
                    }
                }
                if (FX == 0 && FY == 0 && FZ == 0)
                    throw CurveError("singular model: singular point at infinity over extension of degree " +
                                     std::to_string(d));
            }
        }
        // delta for the default infinity: require a unique place there
        auto inf = c.places_at_infinity();
        if (spec.infinity.is_default) {
            if (inf.size() != 1)
                throw CurveError("plane model with several places at infinity is unsupported for the default infinity");
            c.delta_ = inf[0].degree;
        }
    }

    if (!spec.infinity.is_default) {
        auto pls = c.places_above(spec.infinity.finite_prime);
        if (spec.infinity.branch < 0 || spec.infinity.branch >= static_cast<int>(pls.size()))
            throw CurveError("infinity branch index out of range");
        c.delta_ = pls[static_cast<std::size_t>(spec.infinity.branch)].degree;
    }
    return c;
}

std::uint64_t Curve::count_affine_fiber(const Field* E, Elem x) const {
    if (spec_.kind == CurveKind::Hyperelliptic) {
        Poly hE(E, spec_.h.c), fE(E, spec_.f.c);
        Elem hv = poly_eval(hE, x), fv = poly_eval(fE, x);
        if (E->p() == 2) {
            if (hv == 0) return 1;  // unique square root
            Elem u = E->mul(fv, E->inv(E->mul(hv, hv)));
            return E->trace_to_prime(u) == 0 ? 2 : 0;
        }
        if (fv == 0) return 1;
        return E->pow(fv, (E->q() - 1) / 2) == 1 ? 2 : 0;
    }
    // plane: number of roots in y of C(x,y) over E
    std::vector<Elem> cv(spec_.cy.size());
    for (std::size_t i = 0; i < spec_.cy.size(); ++i) cv[i] = poly_eval(Poly(E, spec_.cy[i].c), x);
    Poly cpoly(E, std::move(cv));
    Poly yq = poly_pow_mod(Poly::x(E), E->q(), cpoly);
    Poly g = poly_gcd(poly_sub(yq, Poly::x(E)), cpoly);
    return static_cast<std::uint64_t>(g.degree());
}

std::uint64_t Curve::count_infinite(const Field* E) const {
    if (spec_.kind == CurveKind::Hyperelliptic) return 1;
    auto [b, top_y] = plane_infinity_form(F(), spec_.cy);
    Poly bE(E, b.c);
    std::uint64_t n = 0;
    if (bE.degree() >= 1) {
        Poly tq = poly_pow_mod(Poly::x(E), E->q(), bE);
        n += static_cast<std::uint64_t>(poly_gcd(poly_sub(tq, Poly::x(E)), bE).degree());
    }
    if (top_y == 0) ++n;
    return n;
}

std::uint64_t Curve::count_points_impl(int d, bool parallel) const {
    if (d < 1) throw CurveError("extension degree must be positive");
    std::uint64_t Qd = 1;
    for (int i = 0; i < d; ++i) {
        Qd *= F()->q();
        if (Qd > kCountBound) throw CurveError("q^d exceeds the counting bound 2^20");
    }
    FieldPtr E = d == 1 ? spec_.field : Field::canonical_extension(spec_.field, d);
    const Field* Ep = E.get();
    std::uint64_t Q = Ep->q();
    std::uint64_t total = 0;
    if (parallel) {
#pragma omp parallel for reduction(+ : total) schedule(static)
        for (long long x = 0; x < static_cast<long long>(Q); ++x)
            total += count_affine_fiber(Ep, static_cast<Elem>(x));
    } else {
        for (std::uint64_t x = 0; x < Q; ++x) total += count_affine_fiber(Ep, x);
    }
    return total + count_infinite(Ep);
}

std::uint64_t Curve::count_points(int d) const { return count_points_impl(d, true); }
std::uint64_t Curve::count_points_serial(int d) const { return count_points_impl(d, false); }

std::vector<Place> Curve::places_above(const Poly& p) const {
    if (p.degree() < 1 || !p.is_monic() || !poly_is_irreducible(p))
        throw CurveError("places_above requires a monic irreducible polynomial");
    if (spec_.kind != CurveKind::Hyperelliptic) {
        // unramified splitting read off from the factorization of C mod p
        auto R = Field::extension(spec_.field, std::vector<Elem>(p.c.begin(), p.c.end() - 1));
        std::vector<Elem> cv(spec_.cy.size());
        for (std::size_t i = 0; i < spec_.cy.size(); ++i) {
            Poly r = poly_mod(spec_.cy[i], p);
            std::vector<Elem> dg(static_cast<std::size_t>(p.degree()), 0);
            for (int j = 0; j < p.degree(); ++j) dg[static_cast<std::size_t>(j)] = r.coeff(j);
            cv[i] = R->from_digits(dg);
        }
        Poly cpoly(R.get(), std::move(cv));
        if (!poly_is_squarefree(cpoly))
            throw CurveError("ramified finite place of a plane model: unsupported");
        std::vector<Place> out;
        for (auto& [fac, m] : poly_factor(cpoly)) {
            Place pl;
            pl.prime = p;
            pl.degree = p.degree() * fac.degree();
            out.push_back(std::move(pl));
        }
        return out;
    }
    auto R = Field::extension(spec_.field, std::vector<Elem>(p.c.begin(), p.c.end() - 1));
    auto lift = [&](const Poly& a) {
        Poly r = poly_mod(a, p);
        std::vector<Elem> dg(static_cast<std::size_t>(p.degree()), 0);
        for (int j = 0; j < p.degree(); ++j) dg[static_cast<std::size_t>(j)] = r.coeff(j);
        return R->from_digits(dg);
    };
    // y^2 + h y - f over the residue field
    Poly quad(R.get(), {R->neg(lift(spec_.f)), lift(spec_.h), 1});
    auto facs = poly_factor(quad);
    auto root_to_poly = [&](Elem root) {
        auto dg = R->digits(root);
        return Poly(F(), std::move(dg));
    };
    std::vector<Place> out;
    if (facs.size() == 1 && facs[0].first.degree() == 2) {
        Place pl;
        pl.prime = p;
        pl.degree = 2 * p.degree();
        out.push_back(std::move(pl));
    } else if (facs.size() == 1) {  // double root: ramified
        Place pl;
        pl.prime = p;
        pl.degree = p.degree();
        pl.ram = 2;
        pl.has_branch = true;
        pl.branch_root = root_to_poly(R->neg(facs[0].first.coeff(0)));
        out.push_back(std::move(pl));
    } else {  // split
        for (auto& [fac, m] : facs) {
            Place pl;
            pl.prime = p;
            pl.degree = p.degree();
            pl.has_branch = true;
            pl.branch_root = root_to_poly(R->neg(fac.coeff(0)));
            out.push_back(std::move(pl));
        }
    }
    return out;
}

std::vector<Place> Curve::places_at_infinity() const {
    if (spec_.kind == CurveKind::Hyperelliptic) {
        Place pl;
        pl.at_infinity = true;
        pl.degree = 1;
        pl.ram = 2;  // deg f = 2g+1 is odd
        return {pl};
    }
    auto [b, top_y] = plane_infinity_form(F(), spec_.cy);
    std::vector<Place> out;
    if (b.degree() >= 1)
        for (auto& [fac, m] : poly_factor(b)) {
            Place pl;
            pl.at_infinity = true;
            pl.degree = fac.degree();
            out.push_back(std::move(pl));
        }
    if (top_y == 0) {
        Place pl;
        pl.at_infinity = true;
        pl.degree = 1;
        out.push_back(std::move(pl));
    }
    return out;
}

std::string Curve::describe() const {
    std::ostringstream os;
    if (spec_.kind == CurveKind::Hyperelliptic) {
        os << "y^2";
        if (!spec_.h.is_zero()) os << " + (" << poly_to_string(spec_.h) << ")*y";
        os << " = " << poly_to_string(spec_.f);
    } else {
        os << "C(x,y) = 0 with y-degree " << spec_.cy.size() - 1;
    }
    os << " over F_" << F()->q() << ", genus " << spec_.genus;
    return os.str();
}

}  // namespace ffell
