#ifndef FRAMEDIAG_SEQUENCE_HPP
#define FRAMEDIAG_SEQUENCE_HPP

// Symbolic description of vector sequences {f_k} and their finite
// realizations.  Basis indices in this header are 1-based (e_1, e_2, ...),
// matching how the sequences are written down; dense storage is 0-based.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/util.hpp"

namespace framediag {

// ---------------------------------------------------------------------------
// Weight rules: index k (>= 1) -> complex scalar

namespace weight {
struct InverseIndex {
    bool operator==(const InverseIndex&) const = default;
};
struct Index {
    bool operator==(const Index&) const = default;
};
struct Constant {
    complex value{1.0};
    bool operator==(const Constant&) const = default;
};
struct Geometric {
    complex ratio{0.5};
    bool operator==(const Geometric&) const = default;
};
struct Table {
    std::vector<complex> values;
    bool operator==(const Table&) const = default;
};
}  // namespace weight

using WeightRule =
    std::variant<weight::InverseIndex, weight::Index, weight::Constant, weight::Geometric, weight::Table>;

namespace detail {
inline complex ipow(complex base, std::size_t exponent) {
    complex result{1.0};
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}
}  // namespace detail

/// w(k) for k >= 1.  Throws non_finite_value (carrying k) if the rule yields
/// NaN/Inf, and invalid_spec for a table shorter than k.
inline complex evaluate(const WeightRule& rule, std::size_t k) {
    if (k == 0) throw invalid_spec("weight rules are defined for k >= 1");
    const complex w = std::visit(
        overloaded{
            [k](const weight::InverseIndex&) { return complex{1.0 / static_cast<double>(k)}; },
            [k](const weight::Index&) { return complex{static_cast<double>(k)}; },
            [](const weight::Constant& c) { return c.value; },
            [k](const weight::Geometric& g) { return detail::ipow(g.ratio, k); },
            [k](const weight::Table& t) {
                if (k > t.values.size()) {
                    throw invalid_spec("weight table has " + std::to_string(t.values.size()) +
                                       " entries, index " + std::to_string(k) + " requested");
                }
                return t.values[k - 1];
            },
        },
        rule);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw non_finite_value("weight rule produced a non-finite scalar", k);
    }
    return w;
}

inline std::string_view rule_name(const WeightRule& rule) {
    return std::visit(overloaded{
                          [](const weight::InverseIndex&) { return std::string_view{"inverse_index"}; },
                          [](const weight::Index&) { return std::string_view{"index"}; },
                          [](const weight::Constant&) { return std::string_view{"constant"}; },
                          [](const weight::Geometric&) { return std::string_view{"geometric"}; },
                          [](const weight::Table&) { return std::string_view{"table"}; },
                      },
                      rule);
}

// ---------------------------------------------------------------------------
// Sparse vectors over the basis {e_i}

/// coeff * e_index, index 1-based.
struct Term {
    std::size_t index{1};
    complex coeff{1.0};
    bool operator==(const Term&) const = default;
};

using SparseVector = std::vector<Term>;

/// One slot of a periodic tail.  Its m-th occurrence (m = 0, 1, ...) is
/// w(m + 1 + offset) * e_{start + m * step}.
struct PatternStream {
    std::size_t start{1};
    std::size_t step{1};
    WeightRule weight{weight::Constant{}};
    std::size_t offset{0};
    bool operator==(const PatternStream&) const = default;
};

/// A finite prefix of explicit vectors followed by an optional periodic tail
/// that interleaves its streams round-robin.  Without a tail the sequence
/// ends after the prefix.
struct Pattern {
    std::vector<SparseVector> prefix;
    std::vector<PatternStream> cycle;
    bool operator==(const Pattern&) const = default;

    bool infinite() const noexcept { return !cycle.empty(); }

    /// Element n (0-based) of the sequence.
    SparseVector element(std::size_t n) const {
        if (n < prefix.size()) return prefix[n];
        if (cycle.empty()) throw invalid_spec("finite pattern has no element " + std::to_string(n + 1));
        const std::size_t t = n - prefix.size();
        const PatternStream& s = cycle[t % cycle.size()];
        const std::size_t m = t / cycle.size();
        return {Term{s.start + m * s.step, evaluate(s.weight, m + 1 + s.offset)}};
    }
};

// ---------------------------------------------------------------------------
// Sequence specifications

enum class Role { f, g };

enum class ExampleId { identity, hs, blocked, norm89, canonical };

inline std::string_view to_string(Role r) { return r == Role::f ? "f" : "g"; }

inline std::string_view to_string(ExampleId id) {
    switch (id) {
        case ExampleId::identity: return "ex-identity";
        case ExampleId::hs: return "ex-hs";
        case ExampleId::blocked: return "ex-blocked";
        case ExampleId::norm89: return "ex-norm89";
        case ExampleId::canonical: return "ex-canonical";
    }
    return "unknown";
}

inline constexpr ExampleId all_examples[] = {ExampleId::identity, ExampleId::hs, ExampleId::blocked,
                                             ExampleId::norm89, ExampleId::canonical};

inline std::optional<ExampleId> parse_example_id(std::string_view name) {
    for (ExampleId id : all_examples) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

inline std::string valid_example_ids() {
    std::string out;
    for (ExampleId id : all_examples) {
        if (!out.empty()) out += ", ";
        out += to_string(id);
    }
    return out;
}

namespace spec {
/// Fixed list of columns, all of the same length.
struct Explicit {
    std::vector<std::vector<complex>> columns;
    bool operator==(const Explicit&) const = default;
};
/// f_k = w(k) e_k.
struct ScaledBasis {
    WeightRule weight;
    bool operator==(const ScaledBasis&) const = default;
};
/// One side of a registered worked example.
struct PaperExample {
    ExampleId id{ExampleId::identity};
    Role role{Role::f};
    bool operator==(const PaperExample&) const = default;
};
/// Columns of a seeded random invertible matrix (U for role f, W for role g).
struct RandomRiesz {
    std::size_t dim{1};
    std::uint64_t seed{0};
    Role role{Role::f};
    bool operator==(const RandomRiesz&) const = default;
};
/// Seeded random full-row-rank dim x count synthesis matrix.
struct RandomFrame {
    std::size_t dim{1};
    std::size_t count{1};
    std::uint64_t seed{0};
    bool operator==(const RandomFrame&) const = default;
};
}  // namespace spec

using SequenceSpec = std::variant<spec::Explicit, spec::ScaledBasis, Pattern, spec::PaperExample,
                                  spec::RandomRiesz, spec::RandomFrame>;

inline std::string_view kind_name(const SequenceSpec& s) {
    return std::visit(overloaded{
                          [](const spec::Explicit&) { return std::string_view{"explicit"}; },
                          [](const spec::ScaledBasis&) { return std::string_view{"scaled_basis"}; },
                          [](const Pattern&) { return std::string_view{"pattern"}; },
                          [](const spec::PaperExample&) { return std::string_view{"paper_example"}; },
                          [](const spec::RandomRiesz&) { return std::string_view{"random_riesz"}; },
                          [](const spec::RandomFrame&) { return std::string_view{"random_frame"}; },
                      },
                      s);
}

// ---------------------------------------------------------------------------
// Realizations

/// d x n column matrix of a sequence truncated at N.
class RealizedSequence {
public:
    RealizedSequence(ComplexMatrix columns, std::size_t truncation, std::string provenance)
        : columns_(std::move(columns)), truncation_(truncation), provenance_(std::move(provenance)) {}

    explicit RealizedSequence(ComplexMatrix columns)
        : RealizedSequence(std::move(columns), 0, "matrix") {
        truncation_ = columns_.cols();
    }

    std::size_t dim() const noexcept { return columns_.rows(); }
    std::size_t count() const noexcept { return columns_.cols(); }
    std::size_t truncation() const noexcept { return truncation_; }
    const ComplexMatrix& columns() const noexcept { return columns_; }
    const std::string& provenance() const noexcept { return provenance_; }

private:
    ComplexMatrix columns_;
    std::size_t truncation_;
    std::string provenance_;
};

/// Default cap on dense realizations (entries).  Larger truncations must go
/// through the sparse route.
inline constexpr std::size_t default_dense_budget = std::size_t{4096} * 4096;

/// Columns stored as sparse term lists over e_1..e_dim.
struct SparseSequence {
    std::size_t dim{1};
    std::vector<SparseVector> columns;
    std::size_t truncation{0};
    std::string provenance;

    std::size_t count() const noexcept { return columns.size(); }

    /// Raise the ambient dimension (zero padding).
    void pad_to(std::size_t d) {
        if (d < dim) throw invalid_spec("pad_to cannot shrink the ambient dimension");
        dim = d;
    }

    RealizedSequence to_dense(std::size_t budget = default_dense_budget) const {
        if (columns.empty()) throw invalid_spec("sequence has no elements");
        if (dim * columns.size() > budget) throw too_large(dim, columns.size(), budget);
        ComplexMatrix::storage_type m =
            ComplexMatrix::storage_type::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(columns.size()));
        for (std::size_t k = 0; k < columns.size(); ++k) {
            for (const Term& t : columns[k]) {
                m(static_cast<Eigen::Index>(t.index - 1), static_cast<Eigen::Index>(k)) += t.coeff;
            }
        }
        return {ComplexMatrix(std::move(m)), truncation, provenance};
    }

    static SparseSequence from_dense(const RealizedSequence& seq) {
        SparseSequence out{seq.dim(), {}, seq.truncation(), seq.provenance()};
        out.columns.resize(seq.count());
        const auto& m = seq.columns().eigen();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                if (m(i, k) != complex{0.0}) {
                    out.columns[static_cast<std::size_t>(k)].push_back(
                        Term{static_cast<std::size_t>(i) + 1, m(i, k)});
                }
            }
        }
        return out;
    }
};

/// Highest basis index referenced by a list of vectors (0 if none).
inline std::size_t highest_index(const std::vector<SparseVector>& vs) {
    std::size_t hi = 0;
    for (const auto& v : vs) {
        for (const Term& t : v) hi = std::max(hi, t.index);
    }
    return hi;
}

/// First N elements of a pattern; dim is the highest basis index used.
inline SparseSequence realize_pattern(const Pattern& p, std::size_t n) {
    if (n == 0) throw invalid_spec("truncation N must be >= 1");
    const std::size_t count = p.infinite() ? n : std::min(n, p.prefix.size());
    if (count == 0) throw invalid_spec("pattern has no elements");
    SparseSequence out;
    out.columns.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        SparseVector v = p.element(k);
        for (const Term& t : v) {
            if (t.index == 0) throw invalid_spec("basis indices are 1-based");
            if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
                throw non_finite_value("non-finite pattern coefficient", k + 1);
            }
        }
        out.columns.push_back(std::move(v));
    }
    out.dim = std::max<std::size_t>(1, highest_index(out.columns));
    out.truncation = n;
    out.provenance = "pattern";
    return out;
}

/// f_k = w(k) e_k for k = 1..N; d = n = N.
inline SparseSequence realize_scaled_basis(const WeightRule& w, std::size_t n) {
    if (n == 0) throw invalid_spec("truncation N must be >= 1");
    SparseSequence out{n, {}, n, "scaled_basis(" + std::string(rule_name(w)) + ")"};
    out.columns.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.columns.push_back({Term{k, evaluate(w, k)}});
    return out;
}

}  // namespace framediag

#endif  // FRAMEDIAG_SEQUENCE_HPP
