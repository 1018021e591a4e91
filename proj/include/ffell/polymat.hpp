#pragma once

#include "ffell/poly.hpp"

namespace ffell {

// Rectangular matrix of polynomials over a common field, used as the carrier
// for F_q[x]-lattices (row modules).
struct PolyMatrix {
    const Field* F = nullptr;
    std::size_t cols = 0;
    std::vector<std::vector<Poly>> rows;

    PolyMatrix() = default;
    PolyMatrix(const Field* f, std::size_t ncols) : F(f), cols(ncols) {}

    void add_row(std::vector<Poly> r) { rows.push_back(std::move(r)); }

    bool operator==(const PolyMatrix& o) const { return rows == o.rows; }
};

// Hermite normal form of the row module: row echelon with monic pivots and
// entries above each pivot of strictly smaller degree. Zero rows are dropped,
// so the result has exactly rank(M) rows. Unique for a given row module.
PolyMatrix matrix_hnf(const PolyMatrix& m);

// Is v in the row module of an HNF matrix?
bool hnf_contains(const PolyMatrix& hnf, const std::vector<Poly>& v);

// Reduce v modulo the row module of an HNF matrix (canonical residue).
std::vector<Poly> hnf_reduce(const PolyMatrix& hnf, std::vector<Poly> v);

// Solve sum_i c_i * gens.rows[i] = v over F[x]; nullopt when v is not in
// the row module. Coefficients refer to the rows as given.
std::optional<std::vector<Poly>> lattice_solve(const PolyMatrix& gens, const std::vector<Poly>& v);

std::string matrix_to_string(const PolyMatrix& m);

}  // namespace ffell
