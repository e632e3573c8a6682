#ifndef FRAMEDIAG_REALIZE_HPP
#define FRAMEDIAG_REALIZE_HPP

// Truncation of a SequenceSpec at index cutoff N.
//
//   explicit       first min(N, #columns) columns; d = column length
//   scaled_basis   d = n = N
//   pattern        first N elements (or the whole prefix when finite);
//                  d = highest basis index referenced
//   paper_example  the requested side of the registered example at N, in
//                  the ambient dimension shared with the other side
//   random_*       first min(N, n) columns of the seeded draw; d fixed by
//                  the payload

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>

#include "framediag/error.hpp"
#include "framediag/paper_examples.hpp"
#include "framediag/random.hpp"
#include "framediag/sequence.hpp"
#include "framediag/util.hpp"

namespace framediag {

namespace detail {
inline RealizedSequence leading_columns(const RealizedSequence& s, std::size_t n, std::size_t truncation) {
    const std::size_t keep = std::min(n, s.count());
    ComplexMatrix::storage_type m = s.columns().eigen().leftCols(static_cast<Eigen::Index>(keep));
    return {ComplexMatrix(std::move(m)), truncation, s.provenance()};
}

inline RealizedSequence realize_explicit(const spec::Explicit& e, std::size_t n) {
    if (e.columns.empty()) throw invalid_spec("explicit sequence has no columns");
    const std::size_t d = e.columns.front().size();
    if (d == 0) throw invalid_spec("explicit columns must be non-empty");
    for (std::size_t k = 0; k < e.columns.size(); ++k) {
        if (e.columns[k].size() != d) {
            throw invalid_spec("column length mismatch: column 1 has " + std::to_string(d) + " entries, column " +
                               std::to_string(k + 1) + " has " + std::to_string(e.columns[k].size()));
        }
    }
    const std::size_t count = std::min(n, e.columns.size());
    ComplexMatrix::storage_type m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            const complex v = e.columns[k][i];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw non_finite_value("non-finite entry in explicit column", k + 1);
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
        }
    }
    return {ComplexMatrix(std::move(m)), n, "explicit"};
}

inline RealizedSequence realize_random(const SequenceSpec& s, std::size_t n) {
    if (const auto* r = std::get_if<spec::RandomRiesz>(&s)) {
        auto pair = random_riesz_pair(r->dim, r->seed);
        return leading_columns(r->role == Role::f ? pair.first : pair.second, n, n);
    }
    const auto& fr = std::get<spec::RandomFrame>(s);
    return leading_columns(random_frame(fr.dim, fr.count, fr.seed), n, n);
}

inline bool is_dense_kind(const SequenceSpec& s) {
    return std::holds_alternative<spec::Explicit>(s) || std::holds_alternative<spec::RandomRiesz>(s) ||
           std::holds_alternative<spec::RandomFrame>(s);
}
}  // namespace detail

/// Sparse realization; exact for every kind and cheap for the basis-built
/// kinds, so it is the route used at large truncations.
inline SparseSequence realize_terms(const SequenceSpec& s, std::size_t n) {
    if (n == 0) throw invalid_spec("truncation N must be >= 1");
    return std::visit(
        overloaded{
            [n](const spec::Explicit& e) { return SparseSequence::from_dense(detail::realize_explicit(e, n)); },
            [n](const spec::ScaledBasis& b) { return realize_scaled_basis(b.weight, n); },
            [n](const Pattern& p) { return realize_pattern(p, n); },
            [n](const spec::PaperExample& p) {
                auto pair = paper_example_terms(p.id, n);
                return p.role == Role::f ? std::move(pair.first) : std::move(pair.second);
            },
            [n, &s](const spec::RandomRiesz&) { return SparseSequence::from_dense(detail::realize_random(s, n)); },
            [n, &s](const spec::RandomFrame&) { return SparseSequence::from_dense(detail::realize_random(s, n)); },
        },
        s);
}

/// Dense d x n realization.  Throws too_large when d * n exceeds `budget`.
inline RealizedSequence realize(const SequenceSpec& s, std::size_t n, std::size_t budget = default_dense_budget) {
    if (n == 0) throw invalid_spec("truncation N must be >= 1");
    if (const auto* e = std::get_if<spec::Explicit>(&s)) return detail::realize_explicit(*e, n);
    if (detail::is_dense_kind(s)) return detail::realize_random(s, n);
    return realize_terms(s, n).to_dense(budget);
}

/// Both sides of a pair at truncation N on one ambient space.  Kinds built
/// from basis vectors are zero-padded to the larger dimension; explicit and
/// random kinds keep theirs, so a mismatch there is an error.
inline std::pair<SparseSequence, SparseSequence> realize_pair_terms(const SequenceSpec& f, const SequenceSpec& g,
                                                                    std::size_t n) {
    SparseSequence fs = realize_terms(f, n);
    SparseSequence gs = realize_terms(g, n);
    const bool f_fixed = detail::is_dense_kind(f);
    const bool g_fixed = detail::is_dense_kind(g);
    std::size_t d = std::max(fs.dim, gs.dim);
    if (f_fixed && !g_fixed) d = fs.dim;
    if (g_fixed && !f_fixed) d = gs.dim;
    if (fs.dim > d || gs.dim > d || (f_fixed && g_fixed && fs.dim != gs.dim)) {
        throw dimension_mismatch("ambient dimensions differ (f, g)", fs.dim, fs.count(), gs.dim, gs.count());
    }
    fs.pad_to(d);
    gs.pad_to(d);
    return {std::move(fs), std::move(gs)};
}

inline std::pair<RealizedSequence, RealizedSequence> realize_pair(const SequenceSpec& f, const SequenceSpec& g,
                                                                  std::size_t n,
                                                                  std::size_t budget = default_dense_budget) {
    auto [fs, gs] = realize_pair_terms(f, g, n);
    return {fs.to_dense(budget), gs.to_dense(budget)};
}

}  // namespace framediag

#endif  // FRAMEDIAG_REALIZE_HPP
