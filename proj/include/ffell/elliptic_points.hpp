#pragma once

#include "ffell/orders.hpp"

namespace ffell {

struct EllipticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An elliptic point omega = (eps + s)/t given by its data (s, t, t') in A,
// satisfying (eps^q + s)(eps + s) = t t'.
struct EllipticPoint {
    AElem s, t, tp;
};

// t' = N(eps+s)/t when t divides the norm in A, otherwise nullopt.
std::optional<AElem> is_elliptic_pair(const FuncRing& tilde, const FuncRing& A,
                                      const AElem& s, const AElem& t);

// J_omega = t A + (eps + s) A as an A~-ideal. Recomputed with a second
// generator eps' = alpha eps + beta and checked equal.
Ideal j_ideal(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt);

// A prime of A over the monic irreducible p of F_q[x]. Unlike
// Curve::places_above this works for any residue degree (no Field object
// for the residue field is built).
struct APrime {
    enum Kind { Split, Inert, Ramified } kind = Inert;
    Poly p;
    Poly y0;      // y mod P (split/ramified)
    int degree = 0;  // residue degree over F_q

    Ideal ideal(const FuncRing& A) const;
};

std::vector<APrime> primes_above(const FuncRing& A, const Poly& p);
// v_P(n) for nonzero n in A (exact, via Hensel lifting in the split case).
int aprime_valuation(const FuncRing& A, const APrime& P, const AElem& n);

// Orbit search: scan s within component degree <= B (modulo the
// s -> alpha s + beta symmetry), enumerate the principal divisors t | N(eps+s),
// and bucket the points by the kernel class of J_omega.
struct OrbitTable {
    std::size_t kernel_order = 0;
    // per covered kernel class (ascending kernel position): representative
    std::vector<std::size_t> covered;      // kernel positions
    std::vector<EllipticPoint> reps;       // parallel to covered
    std::vector<bool> self_conjugate;      // parallel to covered
    bool full_coverage = false;
};

OrbitTable enumerate_points(const Curve& c, int B, const KernelInfo& K);

bool is_self_conjugate(const KernelInfo& K, std::size_t kernel_pos);

// M0 = [[s', -t'], [t, -s]] with s' = (eps + eps^q) + s; det = eps^{q+1},
// trace = eps + eps^q, and M0 fixes omega.
struct StabilizerMatrix {
    AElem a, b, c, d;

    bool operator==(const StabilizerMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

StabilizerMatrix stab_mul(const FuncRing& A, const StabilizerMatrix& m, const StabilizerMatrix& n);
bool stab_is_scalar_identity(const StabilizerMatrix& m);

StabilizerMatrix stabilizer_generator(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt);
// exact Moebius fixed-point test for omega = (eps+s)/t via cross-multiplication in A~
bool moebius_fixes(const FuncRing& tilde, const FuncRing& A, const StabilizerMatrix& m,
                   const EllipticPoint& pt);
// multiplicative order of M0 (bounded search; should be ord(eps) | q^2 - 1)
long long stabilizer_order(const FuncRing& A, const StabilizerMatrix& m);
// the span {alpha I + beta M0 : (alpha,beta) != 0}: all invertible matrices,
// returned for closure/intersection checks (size must be q^2 - 1)
std::vector<StabilizerMatrix> stabilizer_span(const FuncRing& A, const StabilizerMatrix& m0);

// x^2 + sigma x + tau with sigma = -(eps + eps^q + 2s)/t, tau = t'/t,
// as K-fractions (numerator, denominator t); both derivation routes
// (from the entries of M0, and direct expansion) are compared, and omega is
// checked to satisfy the polynomial exactly in K~.
struct MinimalPoly {
    AElem sigma_num, tau_num, den;  // sigma = sigma_num/den, tau = tau_num/den
};
MinimalPoly minimal_poly(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt);

// Parity checks: nu(t) even; every prime of tA has even degree.
// Throws on violation.
void parity_check(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt);

}  // namespace ffell
