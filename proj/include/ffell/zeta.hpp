#pragma once

#include "ffell/curve.hpp"

namespace ffell {

// Numerator L(u) of the zeta function of a genus-g function field with
// constant field F_q. Integer coefficients a[0..2g], a[0] = 1.
struct LPoly {
    long long q = 0;
    std::vector<long long> a;

    int genus() const { return (static_cast<int>(a.size()) - 1) / 2; }
    long long eval(long long u) const;
    std::string to_string(const std::string& var = "u") const;

    bool operator==(const LPoly& o) const { return q == o.q && a == o.a; }
};

struct ZetaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recover L(u) from the point counts N_1..N_g plus the functional
// equation. Runs the fatal invariant checks (a0 = 1, functional equation,
// L(1) > 0, L(-1) > 0 cross-check against an extra count) and the
// advisory numeric Riemann-hypothesis check.
LPoly l_polynomial(const Curve& c);

// L-polynomial of the constant field extension K~ = K F_{q^2}, computed
// from L~(u^2) = L(u) L(-u). Throws if an odd coefficient of the product
// fails to vanish.
LPoly extend_constants(const LPoly& L);

// L(1) = |Cl^0(K)|, the divisor class number.
long long class_number(const LPoly& L);

// L(-1) = |Ell(G)| when delta is odd. Cross-checked against L~(1)/L(1).
long long ell_count(const LPoly& L);

// Fatal structural checks: a0 = 1 and a_{2g-i} = q^{g-i} a_i.
bool check_functional_equation(const LPoly& L);

// Advisory: max over reciprocal roots alpha of | |alpha| - sqrt(q) | / sqrt(q),
// found numerically (Durand-Kerner). Should be < 1e-9 for honest L-polys.
double rh_relative_deviation(const LPoly& L);

// |Jac(F_{q^e})| = prod (1 - alpha_i^e) computed exactly from the
// coefficients: resultant-style power map, e in {1, 2}.
long long jacobian_order(const LPoly& L, int e);

// Exact integer test of n >= (sqrt(q) - 1)^(2g) / 4 (and the variant
// without the /4 when quarter == false), done by expanding
// (sqrt(q)-1)^(2g) = P + Q sqrt(q) and comparing surds exactly.
bool at_least_surd_power(long long n, long long q, int g, bool quarter);

}  // namespace ffell
