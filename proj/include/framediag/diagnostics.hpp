#ifndef FRAMEDIAG_DIAGNOSTICS_HPP
#define FRAMEDIAG_DIAGNOSTICS_HPP

// Finite-truncation verdicts for single sequences, cross-Gram matrices and
// candidate dual pairs.  Nothing here decides an infinite-dimensional
// property; growth across truncations is reported by truncation_sweep.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "framediag/block_spectrum.hpp"
#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/frame_ops.hpp"
#include "framediag/linalg.hpp"
#include "framediag/random.hpp"
#include "framediag/sequence.hpp"
#include "framediag/util.hpp"

namespace framediag {

struct SequenceClassification {
    /// Norm of the Gram matrix.
    double bessel_bound{0.0};
    FrameBounds frame;
    /// Synthesis matrix has full row rank.
    bool complete{false};
    /// complete, count == dim, and the Gram matrix is invertible.
    bool riesz{false};
    double nba_sup{0.0};
    double nbb_inf{0.0};
    double tol{default_tol};
};

inline SequenceClassification classify_sequence(const RealizedSequence& seq, double tol = default_tol) {
    SequenceClassification c;
    c.tol = tol;
    const auto gram_spectrum = hermitian_eigenvalues(gram(seq));
    c.bessel_bound = std::max({0.0, gram_spectrum.back(), -gram_spectrum.front()});
    double gram_min_singular = std::abs(gram_spectrum.front());
    for (double l : gram_spectrum) gram_min_singular = std::min(gram_min_singular, std::abs(l));
    c.frame = frame_bounds(seq, tol);
    c.complete = numeric_rank(seq.columns(), tol) == seq.dim();
    c.riesz = c.complete && seq.count() == seq.dim() && gram_min_singular > tol * c.bessel_bound;

    const auto norms = seq.columns().eigen().colwise().norm();
    c.nba_sup = norms.maxCoeff();
    c.nbb_inf = norms.minCoeff();
    return c;
}

struct CrossGramReport {
    std::size_t rows{0};
    std::size_t cols{0};
    double op_norm{0.0};
    double sigma_min{0.0};
    double hs{0.0};
    std::size_t rank{0};
    bool invertible{false};
    /// ||G - G^*|| / max(1, ||G||); square G only.
    std::optional<double> hermitian_defect;
    bool psd{false};
    /// Extreme eigenvalues of the Hermitian part, when G is Hermitian.
    std::optional<double> eigen_min;
    std::optional<double> eigen_max;
    /// ||G^2 - G||; square G only.
    std::optional<double> idempotency_defect;
    /// ||G - I||; square G only.
    std::optional<double> identity_distance;
    double tol{default_tol};
};

inline CrossGramReport analyze_matrix(const ComplexMatrix& g, double tol = default_tol) {
    CrossGramReport r;
    r.tol = tol;
    r.rows = g.rows();
    r.cols = g.cols();
    const auto sigma = singular_values(g);
    r.op_norm = sigma.front();
    r.sigma_min = sigma.back();
    r.hs = hs_norm(g);
    r.rank = rank_from_singular_values(sigma, tol);
    r.invertible = g.square() && r.op_norm > 0.0 && r.sigma_min > tol * r.op_norm;
    if (!g.square()) return r;

    const auto& ge = g.eigen();
    r.hermitian_defect = hermitian_defect(g);
    if (*r.hermitian_defect <= tol) {
        const ComplexMatrix::storage_type sym = 0.5 * (ge + ge.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix::storage_type> es(sym, Eigen::EigenvaluesOnly);
        r.eigen_min = es.eigenvalues().minCoeff();
        r.eigen_max = es.eigenvalues().maxCoeff();
        r.psd = *r.eigen_min >= -tol * std::max(0.0, *r.eigen_max);
    }
    r.idempotency_defect = operator_norm(ComplexMatrix(ComplexMatrix::storage_type(ge * ge - ge)));
    r.identity_distance = operator_norm(
        ComplexMatrix(ComplexMatrix::storage_type(ge - ComplexMatrix::storage_type::Identity(ge.rows(), ge.cols()))));
    return r;
}

inline CrossGramReport analyze_cross_gram(const RealizedSequence& f, const RealizedSequence& g,
                                          double tol = default_tol) {
    return analyze_matrix(cross_gram(f, g), tol);
}

/// Spectral part of the cross-Gram report for sparse sequences of any size.
inline SpectralSummary analyze_cross_gram_terms(const SparseSequence& f, const SparseSequence& g,
                                                double tol = default_tol) {
    return block_spectrum(cross_gram_terms(f, g), tol);
}

struct DualityReport {
    /// max over probes of ||h - sum_k <h, g_k> f_k|| / ||h||
    double reconstruction_residual_1{0.0};
    /// max over probes of ||h - sum_k <h, f_k> g_k|| / ||h||
    double reconstruction_residual_2{0.0};
    /// ||T_f T_g^* - I||
    double pairing_residual_3{0.0};
    bool is_dual_pair{false};
    std::size_t probes{0};
    double tol{default_tol};
};

inline constexpr std::size_t default_probes = 16;

/// Residuals of the three equivalent dual-pair conditions.  Conditions (1)
/// and (2) are sampled on the d basis vectors plus `probes` seeded random
/// unit vectors; condition (3) is exact.
inline DualityReport check_duality(const RealizedSequence& f, const RealizedSequence& g, double tol = default_tol,
                                   std::size_t probes = default_probes, std::uint64_t seed = 0) {
    if (f.dim() != g.dim() || f.count() != g.count()) {
        throw dimension_mismatch("check_duality: sequences differ in shape", f.dim(), f.count(), g.dim(), g.count());
    }
    const auto& tf = f.columns().eigen();
    const auto& tg = g.columns().eigen();
    const Eigen::Index d = tf.rows();

    ComplexMatrix::storage_type h(d, d + static_cast<Eigen::Index>(probes));
    h.leftCols(d).setIdentity();
    if (probes > 0) {
        Rng rng(derive_seed(seed, 5));
        const ComplexMatrix random = gaussian_matrix(static_cast<std::size_t>(d), probes, rng);
        h.rightCols(static_cast<Eigen::Index>(probes)) = random.eigen().colwise().normalized();
    }

    DualityReport r;
    r.tol = tol;
    r.probes = probes;
    for (Eigen::Index p = 0; p < h.cols(); ++p) {
        const Eigen::VectorXcd x = h.col(p);
        // (T_g^* x)_k = <x, g_k>, then synthesize with f; and the reverse.
        const Eigen::VectorXcd rec1 = tf * (tg.adjoint() * x);
        const Eigen::VectorXcd rec2 = tg * (tf.adjoint() * x);
        r.reconstruction_residual_1 = std::max(r.reconstruction_residual_1, (x - rec1).norm() / x.norm());
        r.reconstruction_residual_2 = std::max(r.reconstruction_residual_2, (x - rec2).norm() / x.norm());
    }
    r.pairing_residual_3 = duality_residual(f, g);
    r.is_dual_pair = r.pairing_residual_3 <= tol;
    return r;
}

}  // namespace framediag

#endif  // FRAMEDIAG_DIAGNOSTICS_HPP
