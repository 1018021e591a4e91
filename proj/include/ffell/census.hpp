#pragma once

#include "ffell/elliptic_points.hpp"
#include "ffell/zeta.hpp"

namespace ffell {

struct CensusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One elliptic-point orbit: its kernel class and, when the point search ran,
// an explicit representative (s, t, t').
struct OrbitRecord {
    std::size_t kernel_pos = 0;
    bool self_conjugate = false;
    bool has_rep = false;
    EllipticPoint rep;
};

struct EllSummary {
    long long ell = 0;   // |Ell(G)| = kernel order = L(-1)
    long long ell2 = 0;  // |Ell(G)_2| = kernel 2-torsion
    long long r = 0;     // (ell - ell2) / 2
    std::vector<long long> kernel_divisors;
    std::vector<OrbitRecord> orbits;
};

// Invariants from the norm kernel alone; ell is cross-checked against L(-1).
EllSummary ell_summary(const Curve& c);
// Same, reusing an already-computed kernel and (optionally) an orbit table
// from enumerate_points, whose classes populate the per-orbit records.
EllSummary ell_summary(const Curve& c, const LPoly& L, const KernelInfo& K,
                       const OrbitTable* orbits = nullptr);

struct VertexCensus {
    long long gl2_count = 0;    // isolated vertices with stabilizer GL_2(F_q)
    long long torus_count = 0;  // isolated vertices with stabilizer F_{q^2}^*
    long long gl2_order = 0;    // q (q-1)^2 (q+1)
    long long torus_order = 0;  // q^2 - 1
};

VertexCensus vertex_census(const Curve& c);  // delta = 1 required

// Presentation text for PGL_2(A): the r factors Z/(q+1)Z (spelled out when
// r <= 2), the uncomputed "(remainder)", and the amalgam note for the
// GL_2-type vertices. Reporting only; nothing beyond r is computed.
std::string free_product_summary(const Curve& c);

// Family sweep: all imaginary hyperelliptic models of a given genus over F_q,
// filtered by a named predicate.
struct ScanMatch {
    Poly h, f;
    LPoly L;
    EllSummary summary;
    std::vector<long long> cl0_divisors;  // structure of Cl^0(K)
};

struct ScanReport {
    std::string predicate;
    long long candidates = 0;  // valid models examined
    std::vector<ScanMatch> matches;
    std::string text;  // deterministic human-readable report
};

// Predicates: "ell=N" (N a non-negative integer), "ell-eq-ell2",
// "cl-exp-2" (Cl^0(K) isomorphic to (Z/2)^{2g}, genus 1: (Z/2)^2).
ScanReport scan(const FieldPtr& F, int genus, const std::string& predicate);

}  // namespace ffell
