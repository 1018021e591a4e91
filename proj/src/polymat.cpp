#include "ffell/polymat.hpp"

#include <sstream>

namespace ffell {

PolyMatrix matrix_hnf(const PolyMatrix& m) {
    PolyMatrix w = m;
    const Field* F = w.F;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < w.cols && pivot_row < w.rows.size(); ++col) {
        // Euclidean elimination in this column over rows >= pivot_row
        for (;;) {
            std::size_t best = SIZE_MAX;
            for (std::size_t r = pivot_row; r < w.rows.size(); ++r) {
                if (w.rows[r][col].is_zero()) continue;
                if (best == SIZE_MAX || w.rows[r][col].degree() < w.rows[best][col].degree()) best = r;
            }
            if (best == SIZE_MAX) break;  // column is zero below pivot_row
            std::swap(w.rows[pivot_row], w.rows[best]);
            bool reduced_all = true;
            for (std::size_t r = pivot_row + 1; r < w.rows.size(); ++r) {
                if (w.rows[r][col].is_zero()) continue;
                Poly q = poly_div(w.rows[r][col], w.rows[pivot_row][col]);
                for (std::size_t j = 0; j < w.cols; ++j)
                    w.rows[r][j] = poly_sub(w.rows[r][j], poly_mul(q, w.rows[pivot_row][j]));
                if (!w.rows[r][col].is_zero()) reduced_all = false;
            }
            if (reduced_all) {
                ++pivot_row;
                break;
            }
        }
    }
    // drop zero rows
    std::vector<std::vector<Poly>> nz;
    for (auto& r : w.rows) {
        bool zero = true;
        for (auto& e : r)
            if (!e.is_zero()) zero = false;
        if (!zero) nz.push_back(std::move(r));
    }
    w.rows = std::move(nz);
    // normalize: monic pivots, reduce entries above each pivot
    std::vector<std::size_t> pivcol(w.rows.size());
    for (std::size_t r = 0; r < w.rows.size(); ++r) {
        std::size_t col = 0;
        while (col < w.cols && w.rows[r][col].is_zero()) ++col;
        pivcol[r] = col;
        Elem linv = F->inv(w.rows[r][col].lc());
        for (auto& e : w.rows[r]) e = poly_scale(e, linv);
    }
    for (std::size_t r = w.rows.size(); r-- > 0;) {
        for (std::size_t above = 0; above < r; ++above) {
            Poly& e = w.rows[above][pivcol[r]];
            if (e.degree() >= w.rows[r][pivcol[r]].degree()) {
                Poly q = poly_div(e, w.rows[r][pivcol[r]]);
                for (std::size_t j = 0; j < w.cols; ++j)
                    w.rows[above][j] = poly_sub(w.rows[above][j], poly_mul(q, w.rows[r][j]));
            }
        }
    }
    return w;
}

std::vector<Poly> hnf_reduce(const PolyMatrix& hnf, std::vector<Poly> v) {
    for (std::size_t r = 0; r < hnf.rows.size(); ++r) {
        std::size_t col = 0;
        while (col < hnf.cols && hnf.rows[r][col].is_zero()) ++col;
        if (col == hnf.cols) continue;
        if (v[col].degree() >= hnf.rows[r][col].degree()) {
            Poly q = poly_div(v[col], hnf.rows[r][col]);
            for (std::size_t j = 0; j < hnf.cols; ++j) v[j] = poly_sub(v[j], poly_mul(q, hnf.rows[r][j]));
        }
    }
    return v;
}

bool hnf_contains(const PolyMatrix& hnf, const std::vector<Poly>& v) {
    auto r = hnf_reduce(hnf, v);
    for (auto& e : r)
        if (!e.is_zero()) return false;
    return true;
}

std::optional<std::vector<Poly>> lattice_solve(const PolyMatrix& gens, const std::vector<Poly>& v) {
    const Field* F = gens.F;
    std::size_t k = gens.cols, n = gens.rows.size();
    // augmented rows (g_i | e_i); elimination restricted to the first k columns
    std::vector<std::vector<Poly>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = gens.rows[i];
        for (std::size_t j = 0; j < n; ++j)
            rows[i].push_back(j == i ? Poly::constant(F, 1) : Poly::zero(F));
    }
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t col = 0; col < k && pivot_row < n; ++col) {
        for (;;) {
            std::size_t best = SIZE_MAX;
            for (std::size_t r = pivot_row; r < n; ++r) {
                if (rows[r][col].is_zero()) continue;
                if (best == SIZE_MAX || rows[r][col].degree() < rows[best][col].degree()) best = r;
            }
            if (best == SIZE_MAX) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t r = pivot_row + 1; r < n; ++r) {
                if (rows[r][col].is_zero()) continue;
                Poly q = poly_div(rows[r][col], rows[pivot_row][col]);
                for (std::size_t j = 0; j < k + n; ++j)
                    rows[r][j] = poly_sub(rows[r][j], poly_mul(q, rows[pivot_row][j]));
                if (!rows[r][col].is_zero()) done = false;
            }
            if (done) {
                pivcol.push_back(col);
                ++pivot_row;
                break;
            }
        }
    }
    std::vector<Poly> w = v;
    std::vector<Poly> tag(n, Poly::zero(F));
    for (std::size_t r = 0; r < pivot_row; ++r) {
        std::size_t col = pivcol[r];
        if (w[col].is_zero()) continue;
        auto [q, rem] = poly_divmod(w[col], rows[r][col]);
        if (!rem.is_zero()) return std::nullopt;
        for (std::size_t j = 0; j < k; ++j) w[j] = poly_sub(w[j], poly_mul(q, rows[r][j]));
        for (std::size_t j = 0; j < n; ++j) tag[j] = poly_add(tag[j], poly_mul(q, rows[r][k + j]));
    }
    for (std::size_t j = 0; j < k; ++j)
        if (!w[j].is_zero()) return std::nullopt;
    return tag;
}

std::string matrix_to_string(const PolyMatrix& m) {
    std::ostringstream os;
    for (auto& r : m.rows) {
        os << "[ ";
        for (auto& e : r) os << poly_to_string(e) << " ; ";
        os << "]\n";
    }
    return os.str();
}

}  // namespace ffell
