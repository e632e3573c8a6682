#ifndef FRAMEDIAG_BATTERY_HPP
#define FRAMEDIAG_BATTERY_HPP

// Seeded property battery for the cross-Gram theorems.
//
// Each check has an instance function that takes concrete sequences and
// returns pass/fail with a margin (positive when passing; the distance to
// the failing side of the threshold).  theorem_battery draws `trials`
// random instances per check.  Every trial seeds its own generator from
// (seed, check, trial), so the report does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "framediag/diagnostics.hpp"
#include "framediag/frame_ops.hpp"
#include "framediag/linalg.hpp"
#include "framediag/random.hpp"
#include "framediag/util.hpp"

namespace framediag {

struct CheckOutcome {
    bool passed{false};
    double margin{0.0};
    std::string note;
};

namespace detail {
inline CheckOutcome all_of(std::initializer_list<double> margins, std::string note = {}) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : margins) m = std::min(m, x);
    return {m >= 0.0, m, std::move(note)};
}

/// Signed decades between a relative singular value and the tolerance.
inline double decades(double relative, double tol) {
    const double r = std::max(relative, std::numeric_limits<double>::min());
    return std::log10(r / tol);
}

inline double lower_bound_of(const std::vector<double>& sigma, std::size_t rows, std::size_t cols) {
    return rows >= cols ? sigma.back() : 0.0;
}

/// Inequality slack for the norm-bound families.
inline double slack(double tol) { return 10.0 * tol; }
}  // namespace detail

/// (a) Riesz pair f = U e_k, g = W e_k: G is invertible and equals the
/// matrix of W^* U.
inline CheckOutcome check_riesz_pair(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const ComplexMatrix gm = cross_gram(f, g);
    const ComplexMatrix wu = matmul(adjoint(g.columns()), f.columns());
    const auto sigma = singular_values(gm);
    const double diff = operator_norm(subtract(gm, wu)) / sigma.front();
    const bool square = gm.square();
    return detail::all_of({tol - diff, square ? detail::decades(sigma.back() / sigma.front(), tol) : -1.0});
}

/// (b) Frames with more elements than the dimension: G cannot be
/// invertible, so sigma_min(G) <= tol.
inline CheckOutcome check_frames_not_invertible(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const double smin = min_singular(cross_gram(f, g));
    return detail::all_of({tol - smin});
}

/// (c) Riesz f and Bessel g: G invertible exactly when g is a Riesz basis.
inline CheckOutcome check_riesz_transfer(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const auto sigma = singular_values(cross_gram(f, g));
    const bool invertible = sigma.front() > 0.0 && sigma.back() > tol * sigma.front();
    const bool g_riesz = classify_sequence(g, tol).riesz;
    const double distance =
        std::abs(detail::decades(sigma.front() > 0.0 ? sigma.back() / sigma.front() : 0.0, tol));
    return {invertible == g_riesz, invertible == g_riesz ? distance : -distance,
            invertible ? "invertible" : "singular"};
}

/// (d) rank(G) equals f.count (injective) or g.count (surjective).
inline CheckOutcome check_rank(const RealizedSequence& f, const RealizedSequence& g, std::size_t expected,
                               double tol) {
    const auto sigma = singular_values(cross_gram(f, g));
    const std::size_t rank = rank_from_singular_values(sigma, tol);
    if (expected == 0 || expected > sigma.size()) return {false, -1.0, "expected rank out of range"};
    const double rel = sigma[expected - 1] / sigma.front();
    double m = detail::decades(rel, tol);
    if (expected < sigma.size()) m = std::min(m, -detail::decades(sigma[expected] / sigma.front(), tol));
    return {rank == expected && m >= 0.0, rank == expected ? m : -std::abs(m),
            "rank " + std::to_string(rank) + " expected " + std::to_string(expected)};
}

/// (e) hs(G) <= sqrt(B_g) * sqrt(sum ||f_k||^2).
inline CheckOutcome check_hs_bound(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const double hs = hs_norm(cross_gram(f, g));
    const double bg = frame_bounds(g, tol).upper;
    const double rhs = std::sqrt(bg) * f.columns().eigen().norm();
    return detail::all_of({rhs + detail::slack(tol) - hs});
}

/// (e, orthonormal f) B_g <= ||G||^2 when f is an orthonormal basis.
inline CheckOutcome check_bessel_from_orthonormal(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const double m = operator_norm(cross_gram(f, g));
    const double bg = frame_bounds(g, tol).upper;
    return detail::all_of({m * m * (1.0 + detail::slack(tol)) + detail::slack(tol) - bg});
}

/// (f) g a frame: sup ||f_k||^2 <= ||G||^2 / A_g and
/// inf ||f_k||^2 >= lower(G)^2 / B_g.
inline CheckOutcome check_norm_bounds(const RealizedSequence& f, const RealizedSequence& g, double tol) {
    const ComplexMatrix gm = cross_gram(f, g);
    const auto sigma = singular_values(gm);
    const FrameBounds fb = frame_bounds(g, tol);
    const auto norms2 = f.columns().eigen().colwise().squaredNorm();
    const double sup2 = norms2.maxCoeff();
    const double inf2 = norms2.minCoeff();
    const double above = sigma.front() * sigma.front() / fb.lower + detail::slack(tol) - sup2;
    const double lower = detail::lower_bound_of(sigma, gm.rows(), gm.cols());
    const double below = inf2 - (lower * lower / fb.upper - detail::slack(tol));
    return detail::all_of({above, below});
}

/// (g) Dual pair: G is idempotent with ||G|| >= 1, and the pair is
/// recognized as dual.  Scaling g so that ||G|| <= 0.99 must make the pair
/// non-dual.
inline CheckOutcome check_dual_pair_threshold(const RealizedSequence& f, const RealizedSequence& g, double tol,
                                              double shrink = 0.5) {
    const CrossGramReport r = analyze_cross_gram(f, g, tol);
    const double s = detail::slack(tol);
    const DualityReport dual = check_duality(f, g, tol, 4, 0);

    const double factor = 0.99 * shrink / r.op_norm;
    const RealizedSequence shrunk(ComplexMatrix(ComplexMatrix::storage_type(g.columns().eigen() * factor)),
                                  g.truncation(), g.provenance() + "*shrunk");
    const DualityReport non_dual = check_duality(f, shrunk, tol, 4, 0);

    return detail::all_of({s - r.idempotency_defect.value_or(std::numeric_limits<double>::infinity()),
                           r.op_norm - (1.0 - s), tol - dual.pairing_residual_3,
                           non_dual.is_dual_pair ? -1.0 : non_dual.pairing_residual_3 - tol});
}

/// (h) Canonical dual: G is a Hermitian PSD projection of rank d; the
/// identity when f is a Riesz basis.
inline CheckOutcome check_canonical_projection(const RealizedSequence& f, double tol) {
    const RealizedSequence dual = canonical_dual(f, tol);
    const CrossGramReport r = analyze_cross_gram(f, dual, tol);
    const double s = detail::slack(tol);
    const ComplexMatrix gm = cross_gram(f, dual);
    const ComplexMatrix::storage_type sym = 0.5 * (gm.eigen() + gm.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::storage_type> es(sym, Eigen::EigenvaluesOnly);
    double spectral = std::numeric_limits<double>::infinity();
    std::size_t near_one = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        const double to_one = std::abs(l - 1.0);
        const double to_zero = std::abs(l);
        if (to_one < to_zero) ++near_one;
        spectral = std::min(spectral, s - std::min(to_one, to_zero));
    }
    double identity = std::numeric_limits<double>::infinity();
    if (f.count() == f.dim()) identity = tol - r.identity_distance.value_or(std::numeric_limits<double>::infinity());
    return detail::all_of({s - r.hermitian_defect.value_or(std::numeric_limits<double>::infinity()),
                           r.psd ? s : -1.0, s - r.idempotency_defect.value_or(std::numeric_limits<double>::infinity()),
                           spectral, near_one == f.dim() ? s : -1.0, identity},
                          std::to_string(near_one) + " eigenvalues near 1");
}

// ---------------------------------------------------------------------------

struct DimRange {
    std::size_t lo{2};
    std::size_t hi{8};
};

struct TrialRecord {
    std::size_t trial{0};
    std::size_t dim{0};
    bool passed{false};
    double margin{0.0};
    std::string note;
};

struct CheckResult {
    std::string id;
    std::string name;
    std::size_t passed{0};
    std::size_t failed{0};
    double worst_margin{std::numeric_limits<double>::infinity()};
    std::vector<TrialRecord> trials;

    bool ok() const noexcept { return failed == 0; }
};

struct PropertyReport {
    std::uint64_t seed{0};
    std::size_t trials{0};
    DimRange dims;
    double tol{default_tol};
    std::vector<CheckResult> checks;

    bool all_passed() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
    }
};

struct BatteryOptions {
    std::uint64_t seed{42};
    std::size_t trials{200};
    DimRange dims;
    double tol{default_tol};
    /// Worker threads; 0 means hardware concurrency.  Does not affect results.
    std::size_t threads{1};
};

struct BatteryCheck {
    std::string_view id;
    std::string_view name;
};

inline constexpr BatteryCheck battery_checks[] = {
    {"a", "riesz pair: G invertible and equal to W*U"},
    {"b", "frames with n > d: G not invertible"},
    {"c", "riesz f, bessel g: G invertible iff g riesz"},
    {"d", "riesz/frame pairs: G injective or surjective"},
    {"e", "hilbert-schmidt bound and bessel bound from orthonormal f"},
    {"f", "norm bounded above and below"},
    {"g", "dual pairs: idempotent G with norm >= 1; norm < 1 not dual"},
    {"h", "canonical dual: hermitian PSD projection of rank d"},
};

namespace detail {
struct TrialSetup {
    Rng rng;
    std::size_t d;

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    }
    std::uint64_t next_seed() { return rng(); }
};

inline RealizedSequence random_square(std::size_t d, Rng& rng, bool rank_deficient) {
    ComplexMatrix::storage_type m = gaussian_matrix(d, d, rng).eigen();
    if (rank_deficient) {
        m.col(static_cast<Eigen::Index>(d) - 1).setZero();
        for (Eigen::Index k = 0; k + 1 < static_cast<Eigen::Index>(d); ++k) {
            m.col(static_cast<Eigen::Index>(d) - 1) += complex{0.5, 0.25} * m.col(k);
        }
    }
    return RealizedSequence(ComplexMatrix(std::move(m)));
}

inline RealizedSequence unitary_basis(std::size_t d, Rng& rng) {
    Eigen::HouseholderQR<ComplexMatrix::storage_type> qr(gaussian_matrix(d, d, rng).eigen());
    ComplexMatrix::storage_type q = qr.householderQ() * ComplexMatrix::storage_type::Identity(
                                                            static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    return RealizedSequence(ComplexMatrix(std::move(q)));
}

inline CheckOutcome run_trial(std::size_t check, TrialSetup& t, double tol) {
    const std::size_t d = t.d;
    switch (check) {
        case 0: {
            auto [f, g] = random_riesz_pair(d, t.next_seed());
            return check_riesz_pair(f, g, tol);
        }
        case 1: {
            const std::size_t n = d + t.uniform(1, d + 1);
            const auto f = random_frame(d, n, t.next_seed());
            const auto g = random_frame(d, n, t.next_seed());
            return check_frames_not_invertible(f, g, tol);
        }
        case 2: {
            const auto f = random_riesz_pair(d, t.next_seed()).first;
            const bool deficient = t.uniform(0, 3) == 0;
            const RealizedSequence g =
                deficient ? random_square(d, t.rng, true) : random_riesz_pair(d, t.next_seed()).second;
            return check_riesz_transfer(f, g, tol);
        }
        case 3: {
            const std::size_t n = d + t.uniform(1, d + 1);
            auto [riesz_f, riesz_g] = random_riesz_pair(d, t.next_seed());
            const auto frame_g = random_frame(d, n, t.next_seed());
            const auto frame_f = random_frame(d, n, t.next_seed());
            const CheckOutcome inj = check_rank(riesz_f, frame_g, riesz_f.count(), tol);
            const CheckOutcome sur = check_rank(frame_f, riesz_g, riesz_g.count(), tol);
            return all_of({inj.passed ? inj.margin : -std::abs(inj.margin), sur.passed ? sur.margin : -std::abs(sur.margin)},
                          inj.note + "; " + sur.note);
        }
        case 4: {
            const std::size_t nf = t.uniform(1, 2 * d);
            const std::size_t ng = t.uniform(1, 2 * d);
            const RealizedSequence f(gaussian_matrix(d, nf, t.rng));
            const RealizedSequence g(gaussian_matrix(d, ng, t.rng));
            const CheckOutcome hs = check_hs_bound(f, g, tol);
            const CheckOutcome onb = check_bessel_from_orthonormal(unitary_basis(d, t.rng), g, tol);
            return all_of({hs.margin, onb.margin});
        }
        case 5: {
            const std::size_t nf = t.uniform(1, 2 * d);
            const std::size_t ng = d + t.uniform(0, d);
            const RealizedSequence f(gaussian_matrix(d, nf, t.rng));
            const auto g = random_frame(d, ng, t.next_seed());
            return check_norm_bounds(f, g, tol);
        }
        case 6: {
            const std::size_t n = d + t.uniform(0, d + 1);
            const auto f = random_frame(d, n, t.next_seed());
            const double scale = t.uniform(0, 1) == 0 ? 0.0 : 1.0;
            const auto g = alternate_dual(f, t.next_seed(), scale);
            return check_dual_pair_threshold(f, g, tol);
        }
        case 7: {
            const std::size_t n = d + t.uniform(0, d + 1);
            const RealizedSequence f =
                n == d ? random_riesz_pair(d, t.next_seed()).first : random_frame(d, n, t.next_seed());
            return check_canonical_projection(f, tol);
        }
        default: return {false, -1.0, "unknown check"};
    }
}
}  // namespace detail

inline PropertyReport theorem_battery(const BatteryOptions& opt) {
    if (opt.trials == 0) throw invalid_spec("battery: trials must be >= 1");
    if (opt.dims.lo == 0 || opt.dims.lo > opt.dims.hi) throw invalid_spec("battery: invalid dimension range");
    if (!(opt.tol > 0.0 && opt.tol < 1.0)) throw invalid_spec("battery: tol must lie in (0, 1)");

    constexpr std::size_t n_checks = std::size(battery_checks);
    std::vector<std::vector<TrialRecord>> records(n_checks, std::vector<TrialRecord>(opt.trials));

    auto run_one = [&](std::size_t task) {
        const std::size_t check = task / opt.trials;
        const std::size_t trial = task % opt.trials;
        detail::TrialSetup setup{Rng(derive_seed(opt.seed, check, trial)), 0};
        setup.d = setup.uniform(opt.dims.lo, opt.dims.hi);
        TrialRecord& rec = records[check][trial];
        rec.trial = trial;
        rec.dim = setup.d;
        try {
            const CheckOutcome out = detail::run_trial(check, setup, opt.tol);
            rec.passed = out.passed;
            rec.margin = out.margin;
            rec.note = out.note;
        } catch (const std::exception& e) {
            rec.passed = false;
            rec.margin = -std::numeric_limits<double>::infinity();
            rec.note = e.what();
        }
    };

    const std::size_t tasks = n_checks * opt.trials;
    std::size_t workers = opt.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opt.threads;
    workers = std::min(workers, tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks; i = next++) run_one(i);
            });
        }
    }

    PropertyReport report{opt.seed, opt.trials, opt.dims, opt.tol, {}};
    for (std::size_t c = 0; c < n_checks; ++c) {
        CheckResult r;
        r.id = battery_checks[c].id;
        r.name = battery_checks[c].name;
        for (const auto& rec : records[c]) {
            (rec.passed ? r.passed : r.failed)++;
            r.worst_margin = std::min(r.worst_margin, rec.margin);
        }
        r.trials = std::move(records[c]);
        report.checks.push_back(std::move(r));
    }
    return report;
}

}  // namespace framediag

#endif  // FRAMEDIAG_BATTERY_HPP
