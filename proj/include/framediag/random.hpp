#ifndef FRAMEDIAG_RANDOM_HPP
#define FRAMEDIAG_RANDOM_HPP

// Seeded random Riesz bases, frames and alternate duals.  Every generator is
// a pure function of its arguments: the seed is expanded into independent
// streams with derive_seed, never shared across calls.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "framediag/sequence.hpp"
#include "framediag/util.hpp"

namespace framediag {

using Rng = std::mt19937_64;

inline constexpr std::size_t max_sampling_attempts = 64;

/// Condition-number ceiling for the operators U, W behind random Riesz bases.
inline constexpr double riesz_max_condition = 100.0;

/// Condition-number ceiling for random synthesis matrices; keeps the frame
/// operator condition at or below 1e6.
inline constexpr double frame_max_condition = 1e3;

/// I.i.d. standard complex Gaussian entries (real and imaginary parts with
/// variance 1/2).
inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix::storage_type m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = complex{re, im};
        }
    }
    return ComplexMatrix(std::move(m));
}

/// sigma_max / sigma_min over the min(rows, cols) singular values.
inline double condition_number(const ComplexMatrix& m) {
    const auto s = singular_values(m);
    if (s.back() <= 0.0) return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

namespace detail {
inline ComplexMatrix well_conditioned_square(std::size_t d, std::uint64_t seed, const char* what) {
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t attempt = 0; attempt < max_sampling_attempts; ++attempt) {
        ComplexMatrix u = gaussian_matrix(d, d, rng);
        const double cond = condition_number(u);
        if (cond <= riesz_max_condition) return u;
        worst = cond;
    }
    throw sampling_failure(std::string(what) + ": no draw with condition <= 100 in " +
                           std::to_string(max_sampling_attempts) + " attempts (d=" + std::to_string(d) +
                           ", last condition " + std::to_string(worst) + ")");
}
}  // namespace detail

/// f_k = U e_k and g_k = W e_k for seeded random invertible U, W.
inline std::pair<RealizedSequence, RealizedSequence> random_riesz_pair(std::size_t d, std::uint64_t seed) {
    if (d == 0) throw invalid_spec("random_riesz_pair: d must be >= 1");
    ComplexMatrix u = detail::well_conditioned_square(d, derive_seed(seed, 1), "random_riesz_pair");
    ComplexMatrix w = detail::well_conditioned_square(d, derive_seed(seed, 2), "random_riesz_pair");
    const std::string tag = "random_riesz(d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")";
    return {RealizedSequence(std::move(u), d, tag + ":f"), RealizedSequence(std::move(w), d, tag + ":g")};
}

/// Random d x n synthesis matrix with full row rank.
inline RealizedSequence random_frame(std::size_t d, std::size_t n, std::uint64_t seed) {
    if (d == 0 || n < d) {
        throw invalid_spec("random_frame requires 1 <= d <= n (d=" + std::to_string(d) +
                           ", n=" + std::to_string(n) + ")");
    }
    Rng rng(derive_seed(seed, 3));
    double worst = 0.0;
    for (std::size_t attempt = 0; attempt < max_sampling_attempts; ++attempt) {
        ComplexMatrix t = gaussian_matrix(d, n, rng);
        const auto s = singular_values(t);
        const double cond = s.back() > 0.0 ? s.front() / s.back() : std::numeric_limits<double>::infinity();
        if (rank_from_singular_values(s, default_tol) == d && cond <= frame_max_condition) {
            return RealizedSequence(std::move(t), n,
                                    "random_frame(d=" + std::to_string(d) + ",n=" + std::to_string(n) +
                                        ",seed=" + std::to_string(seed) + ")");
        }
        worst = cond;
    }
    throw sampling_failure("random_frame: no full-rank well-conditioned draw in " +
                           std::to_string(max_sampling_attempts) + " attempts (last condition " +
                           std::to_string(worst) + ")");
}

/// A dual g of the frame f: the canonical dual S^{-1} f_k plus a seeded
/// component from the complement of the analysis range, scaled by `scale`.
/// scale = 0 yields the canonical dual.  T_f T_g^* = I holds by construction.
inline RealizedSequence alternate_dual(const RealizedSequence& f, std::uint64_t seed, double scale = 1.0) {
    const ComplexMatrix& t = f.columns();
    const std::size_t d = f.dim();
    const std::size_t n = f.count();
    if (numeric_rank(t, default_tol) != d) {
        const ComplexMatrix s = matmul(t, adjoint(t));
        throw not_spanning(std::max(0.0, hermitian_eigenvalues(s).front()));
    }
    const auto& te = t.eigen();
    const ComplexMatrix::storage_type s = te * te.adjoint();
    const ComplexMatrix s_inv = invert(ComplexMatrix(s), default_tol);
    ComplexMatrix::storage_type canonical = s_inv.eigen() * te;
    if (scale != 0.0) {
        // P = I - T^* S^{-1} T projects onto the complement of range(T^*).
        const ComplexMatrix::storage_type p =
            ComplexMatrix::storage_type::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
            te.adjoint() * canonical;
        Rng rng(derive_seed(seed, 4));
        const ComplexMatrix y = gaussian_matrix(n, d, rng);
        canonical += scale * (y.eigen().adjoint() * p);
    }
    return RealizedSequence(ComplexMatrix(std::move(canonical)), f.truncation(),
                            "alternate_dual(" + f.provenance() + ",seed=" + std::to_string(seed) + ")");
}

}  // namespace framediag

#endif  // FRAMEDIAG_RANDOM_HPP
