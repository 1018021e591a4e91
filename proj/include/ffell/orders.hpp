#pragma once

#include <optional>

#include "ffell/jacobian.hpp"
#include "ffell/polymat.hpp"

namespace ffell {

struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The coordinate ring A = F_q[x,y] / (y^2 + hy - f), or its constant field
// extension A~ = F_{q^2} A. `R` is the coefficient field of the ring and
// `base` the rational constant field F_q (== R for A itself).
struct FuncRing {
    FieldPtr R;
    FieldPtr base;
    Poly h, f;  // over R
    int g = 0;

    bool is_extension() const { return R != base; }
    Elem eps() const;  // the fixed generator of R over base (extension rings)
};

FuncRing ring_A(const Curve& c);
FuncRing ring_tilde(const Curve& c);  // coefficients in F_{q^2}

// Element a(x) + b(x) y of the ring, coefficients over ring.R.
struct AElem {
    Poly a, b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const AElem& o) const { return a == o.a && b == o.b; }
};

AElem a_zero(const FuncRing& r);
AElem a_one(const FuncRing& r);
AElem a_x(const FuncRing& r);
AElem a_y(const FuncRing& r);
AElem a_const(const FuncRing& r, Elem c);
AElem a_from_polys(Poly a, Poly b);

AElem a_add(const FuncRing& r, const AElem& u, const AElem& v);
AElem a_sub(const FuncRing& r, const AElem& u, const AElem& v);
AElem a_neg(const FuncRing& r, const AElem& u);
AElem a_mul(const FuncRing& r, const AElem& u, const AElem& v);

// Galois conjugation of A~ over A: coefficient Frobenius c -> c^q.
AElem a_conj(const FuncRing& r, const AElem& u);
// Hyperelliptic involution y -> -y - h (within the same ring).
AElem a_conj_y(const FuncRing& r, const AElem& u);

// Valuation at the infinite place: nu(a + by) = -max(2 deg a, 2 deg b + 2g+1).
// Returns INT_MAX for 0.
int a_nu(const FuncRing& r, const AElem& u);
// Pole order -nu (INT_MIN for 0); the lattice weight used for reduction.
int a_weight(const FuncRing& r, const AElem& u);

// u * conj_y(u) = a^2 - abh - b^2 f, a polynomial in R[x].
Poly a_norm_poly(const FuncRing& r, const AElem& u);
// Norm of an A~-element down to A: u * a_conj(u), with F_q coefficients.
AElem a_norm_to_K(const FuncRing& tilde, const FuncRing& A, const AElem& u);

std::string a_to_string(const FuncRing& r, const AElem& u);

// Integral ideal of the ring as an F[x]-lattice in the basis (y, 1):
// rows are (b, a) for the element a + by, kept in HNF, so equal ideals
// have equal representations.
struct Ideal {
    PolyMatrix m;

    bool operator==(const Ideal& o) const { return m == o.m; }
};

Ideal ideal_unit(const FuncRing& r);
Ideal ideal_principal(const FuncRing& r, const AElem& u);
// Span of {g, y g : g in gens}; verifies closure under multiplication by y.
Ideal ideal_from_generators(const FuncRing& r, const std::vector<AElem>& gens);

bool ideal_contains(const FuncRing& r, const Ideal& I, const AElem& u);
Ideal ideal_mul(const FuncRing& r, const Ideal& I, const Ideal& J);
// Galois conjugate ideal (extension rings).
Ideal ideal_conj(const FuncRing& r, const Ideal& J);
// Degree of the HNF determinant = deg of the ideal norm to F[x].
int ideal_det_degree(const Ideal& I);

// Largest polynomial c with I inside c * (full ring); monic.
Poly ideal_content(const FuncRing& r, const Ideal& I);
// I = content * primitive part.
Ideal ideal_primitive_part(const FuncRing& r, const Ideal& I, Poly* content = nullptr);

// The ring A~ viewed as an F_q[x]-lattice of rank 4 in the coordinates
// (eps*y, eps*1, y, 1): HNF of a tilde-ideal over the rational base field.
PolyMatrix ideal_rank4(const FuncRing& tilde, const FuncRing& A, const Ideal& J);

// N(J) = J conj(J) intersected with A, an ideal of A.
Ideal ideal_norm(const FuncRing& tilde, const FuncRing& A, const Ideal& J);

// Generator of a principal A-ideal (up to a scalar), or nullopt. Uses
// Gauss reduction of the rank-2 lattice under the a_weight norm: the
// ideal is principal iff the minimal weight equals deg det.
std::optional<AElem> principal_generator(const FuncRing& r, const Ideal& I);

// Mumford pair of the primitive part: basis (u, y + v') gives the class
// divisor (u, -v' mod u), Cantor-reduced. Content is principal and dropped.
Mumford ideal_mumford_raw(const FuncRing& r, const Ideal& I);  // unreduced
std::size_t ideal_class(const FuncRing& r, const Ideal& I, const JacobianGroup& G);

// Normal shape: J' = I + (eps + a) A with J' equivalent to J,
// witnessed by alpha * J = beta * J' exactly (alpha, beta in A~).
struct NormalForm {
    Ideal I;       // ideal of A
    AElem a;       // element of A
    Ideal jprime;  // the tilde-ideal I + (eps + a) A
    AElem alpha;   // witness multipliers
    AElem beta;
};

NormalForm normal_form(const FuncRing& tilde, const FuncRing& A, const Ideal& J);

}  // namespace ffell
