#ifndef FRAMEDIAG_PAPER_EXAMPLES_HPP
#define FRAMEDIAG_PAPER_EXAMPLES_HPP

// Registry of the worked cross-Gram examples.  Each entry is a pair of
// pattern programs (f, g) plus the truncation rule that maps N to the number
// of terms of each side.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "framediag/error.hpp"
#include "framediag/sequence.hpp"

namespace framediag {

struct ExampleEntry {
    ExampleId id;
    Pattern f;
    Pattern g;
    std::size_t min_n;
    std::string_view summary;
    /// The g tail is extrapolated from the first two printed periods.
    bool inferred_tail;

    std::pair<std::size_t, std::size_t> counts(std::size_t n) const {
        if (id == ExampleId::blocked) return {(n + 1) / 2 + 1, n};
        return {n, n};
    }
};

namespace detail {
inline PatternStream stream(std::size_t start, std::size_t step, WeightRule w, std::size_t offset = 0) {
    return PatternStream{start, step, std::move(w), offset};
}
inline const PatternStream unit_basis = PatternStream{1, 1, weight::Constant{1.0}, 0};
}  // namespace detail

inline ExampleEntry example_entry(ExampleId id) {
    using detail::stream;
    using detail::unit_basis;
    switch (id) {
        case ExampleId::identity:
            return {id,
                    Pattern{{}, {stream(1, 1, weight::InverseIndex{})}},
                    Pattern{{}, {stream(1, 1, weight::Index{})}},
                    1,
                    "f_k = e_k/k, g_k = k e_k: identity cross-Gram, g not Bessel",
                    false};
        case ExampleId::hs:
            return {id,
                    Pattern{{}, {stream(1, 1, weight::InverseIndex{})}},
                    Pattern{{}, {stream(1, 0, weight::Geometric{0.5}), stream(2, 1, weight::Constant{1.0})}},
                    1,
                    "f_k = e_k/k, g = (e1/2, e2, e1/4, e3, ...): Hilbert-Schmidt cross-Gram",
                    true};
        case ExampleId::blocked:
            return {id,
                    Pattern{{{Term{1, 1.0}}}, {unit_basis}},
                    Pattern{{}, {unit_basis, unit_basis}},
                    2,
                    "f = (e1, e1, e2, e3, ...), g = (e1, e1, e2, e2, ...): frames, singular cross-Gram",
                    false};
        case ExampleId::norm89:
            return {id,
                    Pattern{{}, {unit_basis}},
                    Pattern{{{Term{1, 0.5}}}, {stream(1, 0, weight::InverseIndex{}, 1)}},
                    1,
                    "f = (e1, e2, ...), g = (e1/2, e1/2, e1/3, e1/4, ...): cross-Gram norm below 1",
                    false};
        case ExampleId::canonical:
            return {id,
                    Pattern{{{Term{1, 1.0}}}, {unit_basis}},
                    Pattern{{{Term{1, 0.5}}, {Term{1, 0.5}}}, {stream(2, 1, weight::Constant{1.0})}},
                    2,
                    "f = (e1, e1, e2, e3, ...) with its canonical dual: positive idempotent cross-Gram",
                    false};
    }
    throw invalid_spec("unknown example id; valid ids: " + valid_example_ids());
}

inline ExampleId example_from_name(std::string_view name) {
    if (auto id = parse_example_id(name)) return *id;
    throw invalid_spec("unknown example id '" + std::string(name) + "'; valid ids: " + valid_example_ids());
}

/// Both sides of an example at truncation N, sharing one ambient dimension.
inline std::pair<SparseSequence, SparseSequence> paper_example_terms(ExampleId id, std::size_t n) {
    const ExampleEntry e = example_entry(id);
    if (n < e.min_n) {
        throw invalid_spec(std::string(to_string(id)) + " requires N >= " + std::to_string(e.min_n));
    }
    const auto [nf, ng] = e.counts(n);
    SparseSequence f = realize_pattern(e.f, nf);
    SparseSequence g = realize_pattern(e.g, ng);
    const std::size_t d = std::max(f.dim, g.dim);
    f.pad_to(d);
    g.pad_to(d);
    f.truncation = g.truncation = n;
    f.provenance = std::string(to_string(id)) + ":f";
    g.provenance = std::string(to_string(id)) + ":g";
    return {std::move(f), std::move(g)};
}

inline std::pair<RealizedSequence, RealizedSequence> paper_example(ExampleId id, std::size_t n,
                                                                   std::size_t budget = default_dense_budget) {
    auto [f, g] = paper_example_terms(id, n);
    return {f.to_dense(budget), g.to_dense(budget)};
}

}  // namespace framediag

#endif  // FRAMEDIAG_PAPER_EXAMPLES_HPP
