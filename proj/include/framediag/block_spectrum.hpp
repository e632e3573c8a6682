#ifndef FRAMEDIAG_BLOCK_SPECTRUM_HPP
#define FRAMEDIAG_BLOCK_SPECTRUM_HPP

// Exact spectra of cross-Gram matrices of sparse sequences without forming
// the dense n_g x n_f matrix.
//
// Rows and columns of G that are linked by a nonzero entry are merged into
// connected components; after permuting rows and columns G is block
// diagonal with one dense block per component.  The singular values of G
// are the union of the block singular values padded with zeros up to
// min(n_g, n_f).  Sequences built from scaled basis vectors give tiny
// blocks, so truncations with N ~ 1e4 stay cheap.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "framediag/sequence.hpp"

namespace framediag {

struct SparseEntry {
    std::size_t row;
    std::size_t col;
    complex value;
};

/// Nonzero entries sorted by (col, row); indices 0-based.
struct SparseMatrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<SparseEntry> entries;

    double hs_norm() const {
        double sum = 0.0;
        for (const auto& e : entries) sum += std::norm(e.value);
        return std::sqrt(sum);
    }
};

inline SparseMatrix cross_gram_terms(const SparseSequence& f, const SparseSequence& g) {
    if (f.dim != g.dim) {
        throw dimension_mismatch("cross_gram: ambient dimensions differ (f, g)", f.dim, f.count(), g.dim, g.count());
    }
    // basis index -> (row j, conj(coefficient of g_j))
    std::vector<std::vector<std::pair<std::size_t, complex>>> by_basis(f.dim + 1);
    for (std::size_t j = 0; j < g.columns.size(); ++j) {
        for (const Term& t : g.columns[j]) by_basis.at(t.index).emplace_back(j, std::conj(t.coeff));
    }
    SparseMatrix out{g.count(), f.count(), {}};
    std::unordered_map<std::size_t, complex> column;
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < f.columns.size(); ++k) {
        column.clear();
        order.clear();
        for (const Term& t : f.columns[k]) {
            for (const auto& [j, cg] : by_basis.at(t.index)) {
                auto [it, inserted] = column.try_emplace(j, complex{0.0});
                if (inserted) order.push_back(j);
                it->second += t.coeff * cg;
            }
        }
        std::sort(order.begin(), order.end());
        for (std::size_t j : order) {
            const complex v = column[j];
            if (v != complex{0.0}) out.entries.push_back({j, k, v});
        }
    }
    return out;
}

/// One connected component of G with its dense values.
struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    ComplexMatrix values;
};

namespace detail {
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};
}  // namespace detail

/// Dense blocks of G, ordered by their smallest column (or row) index.
/// Rows and columns without any nonzero entry belong to no block.
inline std::vector<Block> connected_blocks(const SparseMatrix& g) {
    // nodes: rows are 0..rows-1, columns are rows..rows+cols-1
    detail::DisjointSets sets(g.rows + g.cols);
    for (const auto& e : g.entries) sets.unite(e.row, g.rows + e.col);

    std::unordered_map<std::size_t, std::size_t> block_of_root;
    std::vector<Block> blocks;
    std::vector<std::vector<SparseEntry>> block_entries;
    std::vector<char> row_seen(g.rows, 0), col_seen(g.cols, 0);
    for (const auto& e : g.entries) {
        const std::size_t root = sets.find(e.row);
        auto [it, inserted] = block_of_root.try_emplace(root, blocks.size());
        if (inserted) {
            blocks.push_back(Block{{}, {}, ComplexMatrix(1, 1)});
            block_entries.emplace_back();
        }
        Block& b = blocks[it->second];
        if (!row_seen[e.row]) {
            row_seen[e.row] = 1;
            b.rows.push_back(e.row);
        }
        if (!col_seen[e.col]) {
            col_seen[e.col] = 1;
            b.cols.push_back(e.col);
        }
        block_entries[it->second].push_back(e);
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        Block& blk = blocks[b];
        std::sort(blk.rows.begin(), blk.rows.end());
        std::sort(blk.cols.begin(), blk.cols.end());
        std::unordered_map<std::size_t, Eigen::Index> row_pos, col_pos;
        for (std::size_t i = 0; i < blk.rows.size(); ++i) row_pos[blk.rows[i]] = static_cast<Eigen::Index>(i);
        for (std::size_t i = 0; i < blk.cols.size(); ++i) col_pos[blk.cols[i]] = static_cast<Eigen::Index>(i);
        ComplexMatrix::storage_type m = ComplexMatrix::storage_type::Zero(static_cast<Eigen::Index>(blk.rows.size()),
                                                                          static_cast<Eigen::Index>(blk.cols.size()));
        for (const auto& e : block_entries[b]) m(row_pos[e.row], col_pos[e.col]) = e.value;
        blk.values = ComplexMatrix(std::move(m));
    }
    return blocks;
}

/// Spectral facts about G computed block by block.
struct SpectralSummary {
    std::size_t rows{0};
    std::size_t cols{0};
    /// Nonincreasing, min(rows, cols) values.
    std::vector<double> singular_values;
    double op_norm{0.0};
    double sigma_min{0.0};
    double hs{0.0};
    std::size_t rank{0};
    std::size_t blocks{0};
    std::size_t largest_block{0};
};

inline SpectralSummary block_spectrum(const SparseMatrix& g, double tol = default_tol) {
    SpectralSummary out;
    out.rows = g.rows;
    out.cols = g.cols;
    const auto blocks = connected_blocks(g);
    out.blocks = blocks.size();
    for (const auto& b : blocks) {
        out.largest_block = std::max(out.largest_block, b.rows.size() * b.cols.size());
        const auto s = framediag::singular_values(b.values);
        out.singular_values.insert(out.singular_values.end(), s.begin(), s.end());
    }
    out.singular_values.resize(std::min(g.rows, g.cols), 0.0);
    std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<>());
    out.op_norm = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    out.sigma_min = out.singular_values.empty() ? 0.0 : out.singular_values.back();
    out.hs = g.hs_norm();
    out.rank = rank_from_singular_values(out.singular_values, tol);
    return out;
}

/// The synthesis matrix of a sparse sequence (d x n).
inline SparseMatrix synthesis_terms(const SparseSequence& f) {
    SparseMatrix out{f.dim, f.count(), {}};
    for (std::size_t k = 0; k < f.columns.size(); ++k) {
        std::vector<SparseEntry> col;
        for (const Term& t : f.columns[k]) {
            auto it = std::find_if(col.begin(), col.end(), [&](const SparseEntry& e) { return e.row == t.index - 1; });
            if (it == col.end()) {
                col.push_back({t.index - 1, k, t.coeff});
            } else {
                it->value += t.coeff;
            }
        }
        std::sort(col.begin(), col.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
        for (const auto& e : col) {
            if (e.value != complex{0.0}) out.entries.push_back(e);
        }
    }
    return out;
}

/// Optimal frame bounds of a sparse sequence from the singular values of its
/// synthesis matrix: B = sigma_max^2, A = sigma_d^2 (0 when n < d).
inline std::pair<double, double> frame_bounds_terms(const SparseSequence& f) {
    const SpectralSummary s = block_spectrum(synthesis_terms(f));
    const double upper = s.op_norm * s.op_norm;
    const double lower = f.count() >= f.dim ? s.sigma_min * s.sigma_min : 0.0;
    return {lower, upper};
}

/// Bessel bound (norm of the Gram matrix) of a sparse sequence.
inline double bessel_bound_terms(const SparseSequence& f) { return frame_bounds_terms(f).second; }

/// Bounds on the pairing residual ||T_f T_g^* - I|| of sparse sequences:
/// the largest column norm from below and the Frobenius norm from above.
struct PairingBounds {
    double lower{0.0};
    double upper{0.0};
    /// upper <= tol.
    bool is_dual_pair{false};
    /// lower > tol.
    bool certainly_not_dual{false};
    double tol{default_tol};
};

inline PairingBounds pairing_bounds_terms(const SparseSequence& f, const SparseSequence& g, double tol = default_tol) {
    if (f.dim != g.dim || f.count() != g.count()) {
        throw dimension_mismatch("pairing residual: sequences differ in shape", f.dim, f.count(), g.dim, g.count());
    }
    // Column i of T_f T_g^* is sum_k conj(g_k[i]) f_k.
    std::vector<std::vector<std::pair<std::size_t, complex>>> by_basis(f.dim + 1);
    for (std::size_t k = 0; k < g.columns.size(); ++k) {
        for (const Term& t : g.columns[k]) by_basis.at(t.index).emplace_back(k, std::conj(t.coeff));
    }
    PairingBounds out;
    out.tol = tol;
    double frobenius_sq = 0.0;
    std::unordered_map<std::size_t, complex> column;
    for (std::size_t i = 1; i <= f.dim; ++i) {
        column.clear();
        column[i] = complex{-1.0};
        for (const auto& [k, c] : by_basis[i]) {
            for (const Term& t : f.columns[k]) column[t.index] += c * t.coeff;
        }
        double norm_sq = 0.0;
        for (const auto& [row, v] : column) norm_sq += std::norm(v);
        frobenius_sq += norm_sq;
        out.lower = std::max(out.lower, std::sqrt(norm_sq));
    }
    out.upper = std::sqrt(frobenius_sq);
    out.is_dual_pair = out.upper <= tol;
    out.certainly_not_dual = out.lower > tol;
    return out;
}

}  // namespace framediag

#endif  // FRAMEDIAG_BLOCK_SPECTRUM_HPP
