#ifndef FRAMEDIAG_FRAME_OPS_HPP
#define FRAMEDIAG_FRAME_OPS_HPP

// The operators of a finite sequence {f_k} in C^d:
//
//   synthesis  T   : C^n -> C^d,  T c = sum_k c_k f_k   (columns are f_k)
//   analysis   T^* : C^d -> C^n,  (T^* x)_k = <x, f_k>
//   frame      S = T T^*          (d x d)
//   Gram       T^* T              (n x n), entry (j, k) = <f_k, f_j>
//   cross-Gram G = T_g^* T_f      (n_g x n_f), entry (j, k) = <f_k, g_j>
//
// Inner products are linear in the first argument.

#include <algorithm>
#include <cstddef>
#include <string>

#include <Eigen/Cholesky>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "framediag/sequence.hpp"

namespace framediag {

/// Optimal frame bounds in C^d.
struct FrameBounds {
    double lower{0.0};
    double upper{0.0};
    bool spans_ambient{false};
    double tol{default_tol};
};

inline ComplexMatrix synthesis(const RealizedSequence& seq) { return seq.columns(); }

inline ComplexMatrix analysis(const RealizedSequence& seq) { return adjoint(seq.columns()); }

inline ComplexMatrix frame_operator(const RealizedSequence& seq) {
    const auto& t = seq.columns().eigen();
    return ComplexMatrix(ComplexMatrix::storage_type(t * t.adjoint()));
}

inline ComplexMatrix gram(const RealizedSequence& seq) {
    const auto& t = seq.columns().eigen();
    return ComplexMatrix(ComplexMatrix::storage_type(t.adjoint() * t));
}

/// Rows indexed by g (j), columns by f (k); entry (j, k) = <f_k, g_j>.
/// Built entrywise from the inner products rather than as a matrix product.
inline ComplexMatrix cross_gram(const RealizedSequence& f, const RealizedSequence& g) {
    if (f.dim() != g.dim()) {
        throw dimension_mismatch("cross_gram: ambient dimensions differ (f, g)", f.dim(), f.count(), g.dim(),
                                 g.count());
    }
    const auto& tf = f.columns().eigen();
    const auto& tg = g.columns().eigen();
    ComplexMatrix::storage_type out(tg.cols(), tf.cols());
    for (Eigen::Index k = 0; k < tf.cols(); ++k) {
        for (Eigen::Index j = 0; j < tg.cols(); ++j) {
            // Eigen's dot conjugates its left operand: sum_i conj(g_j[i]) f_k[i].
            out(j, k) = tg.col(j).dot(tf.col(k));
        }
    }
    return ComplexMatrix(std::move(out));
}

inline FrameBounds frame_bounds(const RealizedSequence& seq, double tol = default_tol) {
    const auto lambda = hermitian_eigenvalues(frame_operator(seq));
    FrameBounds fb;
    fb.upper = std::max(0.0, lambda.back());
    fb.lower = std::clamp(lambda.front(), 0.0, fb.upper);
    fb.spans_ambient = fb.lower > tol * fb.upper;
    fb.tol = tol;
    return fb;
}

/// Frame-operator condition above which the canonical dual is obtained by a
/// Cholesky solve instead of the explicit inverse.
inline constexpr double canonical_dual_inverse_limit = 1e6;

/// {S^{-1} f_k}.
inline RealizedSequence canonical_dual(const RealizedSequence& seq, double tol = default_tol) {
    const FrameBounds fb = frame_bounds(seq, tol);
    if (!fb.spans_ambient) throw not_spanning(fb.lower);
    const ComplexMatrix s = frame_operator(seq);
    ComplexMatrix::storage_type dual;
    if (fb.upper <= canonical_dual_inverse_limit * fb.lower) {
        dual = invert(s, tol).eigen() * seq.columns().eigen();
    } else {
        dual = s.eigen().llt().solve(seq.columns().eigen());
    }
    return RealizedSequence(ComplexMatrix(std::move(dual)), seq.truncation(),
                            "canonical_dual(" + seq.provenance() + ")");
}

/// Hilbert-Schmidt norm (sum over the standard basis of ||M e_k||^2)^(1/2).
inline double hs_norm(const ComplexMatrix& m) { return frobenius_norm(m); }

/// ||T_f T_g^* - I||, zero exactly when (f, g) is a dual pair.
inline double duality_residual(const RealizedSequence& f, const RealizedSequence& g) {
    if (f.dim() != g.dim() || f.count() != g.count()) {
        throw dimension_mismatch("duality_residual: sequences differ in shape", f.dim(), f.count(), g.dim(),
                                 g.count());
    }
    const auto& tf = f.columns().eigen();
    const auto& tg = g.columns().eigen();
    const ComplexMatrix::storage_type r =
        tf * tg.adjoint() - ComplexMatrix::storage_type::Identity(tf.rows(), tf.rows());
    return operator_norm(ComplexMatrix(r));
}

}  // namespace framediag

#endif  // FRAMEDIAG_FRAME_OPS_HPP
