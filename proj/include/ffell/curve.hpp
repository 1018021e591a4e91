#pragma once

#include <cstdint>

#include "ffell/poly.hpp"

namespace ffell {

enum class CurveKind { Hyperelliptic, Plane };

struct InfinitySpec {
    bool is_default = true;
    Poly finite_prime;   // monic irreducible; only when !is_default
    int branch = 0;      // index into places_above(finite_prime)
};

struct CurveSpec {
    FieldPtr field;
    CurveKind kind = CurveKind::Hyperelliptic;
    Poly h, f;                 // hyperelliptic: y^2 + h(x) y = f(x)
    std::vector<Poly> cy;      // plane: C(x,y) = sum cy[i](x) y^i, monic in y
    int genus = 0;
    InfinitySpec infinity;
};

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when an operation requires odd delta (exit code 2 in the CLI).
struct DeltaParityError : CurveError {
    using CurveError::CurveError;
};

struct Place {
    bool at_infinity = false;
    Poly prime;        // monic irreducible below the place (finite places)
    int degree = 1;    // residue field degree over F_q
    int ram = 1;       // ramification index
    bool has_branch = false;
    Poly branch_root;  // y-value mod prime identifying the place, when split/ramified
};

// A validated curve model of the function field K.
class Curve {
  public:
    static Curve validate(const CurveSpec& spec);

    const CurveSpec& spec() const { return spec_; }
    const FieldPtr& field() const { return spec_.field; }
    const Field* F() const { return spec_.field.get(); }
    CurveKind kind() const { return spec_.kind; }
    int genus() const { return spec_.genus; }
    int delta() const { return delta_; }
    const Poly& h() const { return spec_.h; }
    const Poly& f() const { return spec_.f; }

    // True when the ideal/Jacobian machinery applies: hyperelliptic imaginary
    // model with the default infinity (delta = 1).
    bool supports_class_ops() const;
    void require_class_ops() const;

    // Number of points of the smooth projective model rational over F_{q^d}.
    // OpenMP-parallel over x-fibers.
    std::uint64_t count_points(int d) const;
    // Single-threaded reference implementation, kept for testing/benchmarks.
    std::uint64_t count_points_serial(int d) const;

    std::vector<Place> places_above(const Poly& p) const;  // finite, monic irreducible
    std::vector<Place> places_at_infinity() const;

    std::string describe() const;

  private:
    explicit Curve(CurveSpec s) : spec_(std::move(s)) {}
    std::uint64_t count_points_impl(int d, bool parallel) const;
    std::uint64_t count_affine_fiber(const Field* E, Elem x) const;
    std::uint64_t count_infinite(const Field* E) const;

    CurveSpec spec_;
    int delta_ = 1;
};

}  // namespace ffell
