#pragma once

#include <functional>
#include <map>

#include "ffell/curve.hpp"

namespace ffell {

// Reduced Mumford representative (u, v): u monic, deg u <= g,
// deg v < deg u, u | v^2 + h v - f. Identity is (1, 0).
struct Mumford {
    Poly u, v;

    bool operator==(const Mumford& o) const { return u == o.u && v == o.v; }
    bool operator<(const Mumford& o) const {
        if (u != o.u) return poly_less(u, o.u);
        return poly_less(v, o.v);
    }
    bool is_identity() const { return u.degree() == 0; }
};

// Curve data lifted to the field the divisors live over (F_q or F_{q^2}).
struct JacCtx {
    const Field* E = nullptr;
    Poly h, f;
    int g = 0;
};

struct JacobianError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

JacCtx jac_ctx(const Curve& c, const Field* E);

Mumford mum_identity(const Field* E);
bool mum_valid(const JacCtx& ctx, const Mumford& d);
Mumford mum_neg(const JacCtx& ctx, const Mumford& d);
// Cantor reduction of a possibly-unreduced pair (u monic not required,
// deg v < deg u not required) to the reduced representative of its class.
Mumford mum_reduce(const JacCtx& ctx, Poly u, Poly v);
Mumford cantor_add(const JacCtx& ctx, const Mumford& a, const Mumford& b);
Mumford mum_mul(const JacCtx& ctx, const Mumford& d, long long n);
// Coefficient Frobenius a -> a^{q_base} relative to the base of ctx.E;
// the identity map when ctx.E is not an extension.
Mumford frobenius(const JacCtx& ctx, const Mumford& d);

// Elementary divisors d1 | d2 | ... of a finite abelian group given by
// an index-based law; id is the index of the identity element.
std::vector<long long> group_structure(std::size_t n,
                                       const std::function<std::size_t(std::size_t, std::size_t)>& add,
                                       std::size_t id);

struct JacobianGroup {
    FieldPtr field;
    JacCtx ctx;  // ctx.E == field.get()
    std::vector<Mumford> elems;  // sorted, elems[0] = identity
    std::vector<long long> divisors;

    std::size_t order() const { return elems.size(); }
    std::size_t index_of(const Mumford& d) const;
    std::size_t add(std::size_t i, std::size_t j) const;

  private:
    friend JacobianGroup enumerate_jacobian(const Curve&, FieldPtr);
    std::map<Mumford, std::size_t> index_;
};

// Full enumeration of Cl^0 over the given constant field (genus <= 2,
// order bound 10^6). Order is checked against the L-polynomial.
JacobianGroup enumerate_jacobian(const Curve& c, FieldPtr E);

// The kernel of the norm (trace) map Cl^0(K~) -> Cl^0(K),
// {D over F_{q^2} : D + frobenius(D) = 0}, with its structure.
struct KernelInfo {
    JacobianGroup full;                 // Cl^0 over F_{q^2}
    std::vector<std::size_t> kernel;    // indices into full.elems, sorted
    std::vector<long long> divisors;    // kernel structure
    long long order = 0;
    long long two_torsion = 0;          // size of the kernel's 2-torsion
    bool trace_surjective = false;      // image of D + frob(D) = rational part

    bool in_kernel(std::size_t full_index) const;
    // index into `kernel` of a kernel element given by its full index
    std::size_t kernel_pos(std::size_t full_index) const;
};

KernelInfo norm_kernel(const Curve& c);

}  // namespace ffell
