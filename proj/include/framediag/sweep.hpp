#ifndef FRAMEDIAG_SWEEP_HPP
#define FRAMEDIAG_SWEEP_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "framediag/block_spectrum.hpp"
#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "framediag/realize.hpp"
#include "framediag/sequence.hpp"

namespace framediag {

struct PairSpec {
    SequenceSpec f;
    SequenceSpec g;
};

inline PairSpec example_pair_spec(ExampleId id) {
    return {spec::PaperExample{id, Role::f}, spec::PaperExample{id, Role::g}};
}

struct SweepRow {
    std::size_t n{0};
    std::size_t dim{0};
    std::size_t rows{0};
    std::size_t cols{0};
    double op_norm{0.0};
    double sigma_min{0.0};
    double hs{0.0};
    double hs_squared{0.0};
    double bessel_f{0.0};
    double bessel_g{0.0};
};

/// Trend verdicts over the sweep.  "growing" means the quantity increased
/// at every step and still grew by at least 50% over the last one;
/// "stabilizing" means the last change is within 1% of the value and no
/// larger than the change before it.
struct TrendFlags {
    bool bessel_f_growing{false};
    bool bessel_g_growing{false};
    bool op_norm_stabilizing{false};
    bool hs_stabilizing{false};
};

struct ConvergenceTable {
    std::vector<SweepRow> rows;
    TrendFlags flags;
    double tol{default_tol};
};

inline constexpr double growth_ratio = 1.5;
inline constexpr double stabilization_rel = 1e-2;

inline bool growing_trend(std::span<const double> v) {
    if (v.size() < 2) return false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return v[v.size() - 1] >= growth_ratio * v[v.size() - 2];
}

inline bool stabilizing_trend(std::span<const double> v) {
    if (v.size() < 2) return false;
    const std::size_t n = v.size();
    const double last = std::abs(v[n - 1] - v[n - 2]);
    if (last > stabilization_rel * std::abs(v[n - 1])) return false;
    return n < 3 || last <= std::abs(v[n - 2] - v[n - 3]);
}

/// Spectral quantities of the cross-Gram matrix at each truncation in
/// `n_list`, computed on the sparse route so large N stay affordable.
inline ConvergenceTable truncation_sweep(const PairSpec& pair, std::span<const std::size_t> n_list,
                                         double tol = default_tol) {
    if (n_list.size() < 2) throw invalid_spec("sweep needs at least two truncations");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) throw invalid_spec("sweep truncations must be strictly increasing");
    }
    ConvergenceTable table;
    table.tol = tol;
    std::vector<double> bf, bg, op, hs;
    for (std::size_t n : n_list) {
        const auto [f, g] = realize_pair_terms(pair.f, pair.g, n);
        const SpectralSummary s = block_spectrum(cross_gram_terms(f, g), tol);
        SweepRow row;
        row.n = n;
        row.dim = f.dim;
        row.rows = s.rows;
        row.cols = s.cols;
        row.op_norm = s.op_norm;
        row.sigma_min = s.sigma_min;
        row.hs = s.hs;
        row.hs_squared = s.hs * s.hs;
        row.bessel_f = bessel_bound_terms(f);
        row.bessel_g = bessel_bound_terms(g);
        bf.push_back(row.bessel_f);
        bg.push_back(row.bessel_g);
        op.push_back(row.op_norm);
        hs.push_back(row.hs);
        table.rows.push_back(row);
    }
    table.flags.bessel_f_growing = growing_trend(bf);
    table.flags.bessel_g_growing = growing_trend(bg);
    table.flags.op_norm_stabilizing = stabilizing_trend(op);
    table.flags.hs_stabilizing = stabilizing_trend(hs);
    return table;
}

}  // namespace framediag

#endif  // FRAMEDIAG_SWEEP_HPP
