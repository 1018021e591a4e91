#pragma once

#include <optional>
#include <utility>

#include "ffell/field.hpp"

namespace ffell {

// Univariate polynomial over a Field. Coefficients are stored low-to-high
// with no trailing zeros; the zero polynomial has an empty coefficient list
// and degree() == -1 (the "-infinity" marker).
struct Poly {
    const Field* F = nullptr;
    std::vector<Elem> c;

    Poly() = default;
    Poly(const Field* f, std::vector<Elem> coeffs) : F(f), c(std::move(coeffs)) { trim(); }

    static Poly zero(const Field* f) { return Poly(f, {}); }
    static Poly constant(const Field* f, Elem a) { return Poly(f, {a}); }
    static Poly x(const Field* f) { return Poly(f, {0, 1}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Elem lc() const { return c.empty() ? 0 : c.back(); }
    Elem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : 0; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, Elem s);
Poly poly_shift(const Poly& a, int k);  // multiply by x^k
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_div(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
bool poly_divides(const Poly& a, const Poly& b);  // a | b
Poly poly_gcd(Poly a, Poly b);                    // monic gcd
// g = gcd, g = s*a + t*b
struct XgcdResult {
    Poly g, s, t;
};
XgcdResult poly_xgcd(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
Poly poly_deriv(const Poly& a);
Elem poly_eval(const Poly& a, Elem x);
Poly poly_pow_mod(const Poly& a, std::uint64_t e, const Poly& mod);
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod);

// Map coefficients through a function (e.g. Frobenius or an embedding).
template <typename Fn>
Poly poly_map(const Field* target, const Poly& a, Fn&& fn) {
    std::vector<Elem> c(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = fn(a.c[i]);
    return Poly(target, std::move(c));
}

// Canonical total order: by degree, then by encoded coefficients high-to-low.
bool poly_less(const Poly& a, const Poly& b);

std::string poly_to_string(const Poly& a, const std::string& var = "x");

bool poly_is_irreducible(const Poly& a);
bool poly_is_squarefree(const Poly& a);

// Monic irreducible factors with multiplicities, deterministically ordered
// (degree first, then coefficient encoding). Product of the factors times
// lc(f) equals f.
std::vector<std::pair<Poly, int>> poly_factor(const Poly& f);

// Roots in the coefficient field, sorted by encoding.
std::vector<Elem> poly_roots(const Poly& f);

std::uint64_t poly_encode_hash(const Poly& f);

}  // namespace ffell
