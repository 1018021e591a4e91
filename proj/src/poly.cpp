#include "ffell/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ffell {

Poly poly_add(const Poly& a, const Poly& b) {
    const Field* F = a.F ? a.F : b.F;
    std::vector<Elem> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(F, std::move(c));
}

Poly poly_neg(const Poly& a) {
    std::vector<Elem> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.F->neg(a.c[i]);
    return Poly(a.F, std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_mul(const Poly& a, const Poly& b) {
    const Field* F = a.F ? a.F : b.F;
    if (a.is_zero() || b.is_zero()) return Poly::zero(F);
    std::vector<Elem> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j] != 0) c[i + j] = F->add(c[i + j], F->mul(a.c[i], b.c[j]));
    }
    return Poly(F, std::move(c));
}

Poly poly_scale(const Poly& a, Elem s) {
    if (s == 0) return Poly::zero(a.F);
    std::vector<Elem> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.F->mul(a.c[i], s);
    return Poly(a.F, std::move(c));
}

Poly poly_shift(const Poly& a, int k) {
    if (a.is_zero()) return a;
    std::vector<Elem> c(a.c.size() + static_cast<std::size_t>(k), 0);
    std::copy(a.c.begin(), a.c.end(), c.begin() + k);
    return Poly(a.F, std::move(c));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    const Field* F = b.F;
    if (a.degree() < b.degree()) return {Poly::zero(F), a};
    std::vector<Elem> rem = a.c;
    std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    Elem linv = F->inv(b.lc());
    for (int i = a.degree(); i >= b.degree(); --i) {
        Elem coef = rem[static_cast<std::size_t>(i)];
        if (coef == 0) continue;
        Elem c = F->mul(coef, linv);
        quo[static_cast<std::size_t>(i - b.degree())] = c;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(i - b.degree() + j)] =
                F->sub(rem[static_cast<std::size_t>(i - b.degree() + j)], F->mul(c, b.c[static_cast<std::size_t>(j)]));
    }
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

Poly poly_div(const Poly& a, const Poly& b) { return poly_divmod(a, b).first; }
Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

bool poly_divides(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero();
    return poly_mod(b, a).is_zero();
}

Poly poly_monic(const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return poly_scale(a, a.F->inv(a.lc()));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

XgcdResult poly_xgcd(const Poly& a, const Poly& b) {
    const Field* F = a.F ? a.F : b.F;
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1 = Poly::zero(F);
    Poly t0 = Poly::zero(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.lc() != 1) {
        Elem inv = F->inv(r0.lc());
        r0 = poly_scale(r0, inv);
        s0 = poly_scale(s0, inv);
        t0 = poly_scale(t0, inv);
    }
    return {r0, s0, t0};
}

Poly poly_deriv(const Poly& a) {
    if (a.degree() < 1) return Poly::zero(a.F);
    std::vector<Elem> c(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i)
        c[i - 1] = a.F->mul(a.c[i], a.F->from_int(static_cast<long long>(i)));
    return Poly(a.F, std::move(c));
}

Elem poly_eval(const Poly& a, Elem x) {
    Elem r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = a.F->add(a.F->mul(r, x), a.c[i]);
    return r;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) { return poly_mod(poly_mul(a, b), mod); }

Poly poly_pow_mod(const Poly& a, std::uint64_t e, const Poly& mod) {
    Poly r = Poly::constant(mod.F, 1);
    Poly base = poly_mod(a, mod);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod);
        base = poly_mulmod(base, base, mod);
        e >>= 1;
    }
    return r;
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

std::string poly_to_string(const Poly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
        Elem ci = a.coeff(i);
        if (ci == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || ci != 1) os << a.F->to_string(ci);
        if (i > 0) {
            if (ci != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::uint64_t poly_encode_hash(const Poly& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (Elem e : f.c) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

bool poly_is_irreducible(const Poly& a) {
    if (a.degree() < 1) return false;
    if (a.degree() == 1) return true;
    const Field* F = a.F;
    int n = a.degree();
    Poly x = Poly::x(F);
    Poly xq = x;
    for (int i = 0; i < n; ++i) xq = poly_pow_mod(xq, F->q(), a);
    if (!poly_mod(poly_sub(xq, x), a).is_zero()) return false;
    for (std::uint64_t r : prime_factors_u64(static_cast<std::uint64_t>(n))) {
        Poly xe = x;
        for (int i = 0; i < n / static_cast<int>(r); ++i) xe = poly_pow_mod(xe, F->q(), a);
        if (poly_gcd(poly_sub(xe, x), a).degree() != 0) return false;
    }
    return true;
}

bool poly_is_squarefree(const Poly& a) {
    if (a.degree() < 1) return true;
    Poly d = poly_deriv(a);
    if (d.is_zero()) return false;
    return poly_gcd(a, d).degree() == 0;
}

namespace {

// p-th root of a polynomial all of whose exponents are multiples of p.
Poly poly_pth_root(const Poly& f) {
    const Field* F = f.F;
    std::uint64_t p = F->p();
    std::uint64_t root_exp = F->q() / p;  // c -> c^(q/p) inverts c -> c^p
    std::vector<Elem> c(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F->pow(f.coeff(static_cast<int>(i * p)), root_exp);
    return Poly(F, std::move(c));
}

// squarefree decomposition: list of (squarefree monic g_i, multiplicity m_i)
void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (f.degree() < 1) return;
    Poly d = poly_deriv(f);
    if (d.is_zero()) {
        squarefree_decompose(poly_pth_root(f), mult * static_cast<int>(f.F->p()), out);
        return;
    }
    Poly g = poly_gcd(f, d);
    Poly w = poly_div(f, g);  // product of factors with multiplicity not divisible by p
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, g);
        Poly part = poly_div(w, y);
        if (part.degree() > 0) out.emplace_back(part, mult * i);
        w = y;
        g = poly_div(g, y);
        ++i;
    }
    if (g.degree() > 0) squarefree_decompose(poly_pth_root(g), mult * static_cast<int>(f.F->p()), out);
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field* F = f.F;
    if (f.degree() == d) {
        out.push_back(poly_monic(f));
        return;
    }
    std::uint64_t Q = F->q();
    for (;;) {
        std::vector<Elem> rc(static_cast<std::size_t>(f.degree()), 0);
        for (auto& e : rc) e = rng() % Q;
        Poly r(F, std::move(rc));
        if (r.degree() < 1) continue;
        Poly g = poly_gcd(r, f);
        if (g.degree() == 0) {
            if (F->p() == 2) {
                // trace map over F_{2^k}: T(r) = r + r^2 + ... + r^(2^(kd-1))
                int kd = F->deg_over_prime() * d;
                Poly t = Poly::zero(F), cur = poly_mod(r, f);
                for (int i = 0; i < kd; ++i) {
                    t = poly_add(t, cur);
                    cur = poly_mulmod(cur, cur, f);
                }
                g = poly_gcd(t, f);
            } else {
                std::uint64_t e = 1;
                for (int i = 0; i < d; ++i) e *= Q;
                Poly h = poly_pow_mod(r, (e - 1) / 2, f);
                g = poly_gcd(poly_sub(h, Poly::constant(F, 1)), f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(poly_div(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> poly_factor(const Poly& f) {
    if (f.is_zero()) throw FieldError("cannot factor the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() < 1) return out;
    const Field* F = f.F;
    // deterministic rng seeded from the input so outputs are reproducible
    std::mt19937_64 rng(poly_encode_hash(f) ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(poly_monic(f), 1, sqf);
    for (auto& [part, mult] : sqf) {
        // distinct-degree factorization of the squarefree part
        Poly rem = part;
        Poly x = Poly::x(F);
        Poly xq = poly_mod(x, rem);
        int d = 0;
        while (rem.degree() > 0) {
            ++d;
            if (2 * d > rem.degree()) {
                out.emplace_back(poly_monic(rem), mult);
                break;
            }
            xq = poly_pow_mod(xq, F->q(), rem);
            Poly g = poly_gcd(poly_sub(xq, x), rem);
            if (g.degree() > 0) {
                std::vector<Poly> pieces;
                equal_degree_split(g, d, rng, pieces);
                for (auto& p : pieces) out.emplace_back(p, mult);
                rem = poly_div(rem, g);
                xq = poly_mod(xq, rem);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

std::vector<Elem> poly_roots(const Poly& f) {
    std::vector<Elem> out;
    for (auto& [p, m] : poly_factor(f))
        if (p.degree() == 1) out.push_back(p.F->neg(p.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ffell
