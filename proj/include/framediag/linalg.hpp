#ifndef FRAMEDIAG_LINALG_HPP
#define FRAMEDIAG_LINALG_HPP

// Dense spectral and algebraic kernels over ComplexMatrix.  Tolerances are
// relative to the largest singular value unless stated otherwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"

namespace framediag {

/// Default relative tolerance for rank and invertibility decisions.
inline constexpr double default_tol = 1e-10;

/// Maximum relative asymmetry accepted by hermitian_eigenvalues.
inline constexpr double hermitian_tol = 1e-10;

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    return ComplexMatrix(ComplexMatrix::storage_type(m.eigen().adjoint()));
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw dimension_mismatch("matmul: inner dimensions differ", a.rows(), a.cols(), b.rows(),
                                 b.cols());
    }
    return ComplexMatrix(ComplexMatrix::storage_type(a.eigen() * b.eigen()));
}

inline ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dimension_mismatch("subtract: shapes differ", a.rows(), a.cols(), b.rows(), b.cols());
    }
    return ComplexMatrix(ComplexMatrix::storage_type(a.eigen() - b.eigen()));
}

inline double frobenius_norm(const ComplexMatrix& m) { return m.eigen().norm(); }

/// Largest entry modulus.
inline double max_abs(const ComplexMatrix& m) { return m.eigen().cwiseAbs().maxCoeff(); }

/// Nonincreasing singular values, min(rows, cols) of them.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
    Eigen::BDCSVD<ComplexMatrix::storage_type> svd(m.eigen());
    const auto& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Relative asymmetry ||M - M*||_F / max(1, ||M||_F).  Non-square input is
/// infinitely asymmetric.
inline double hermitian_defect(const ComplexMatrix& m) {
    if (!m.square()) return std::numeric_limits<double>::infinity();
    const double diff = (m.eigen() - m.eigen().adjoint()).norm();
    return diff / std::max(1.0, m.eigen().norm());
}

/// Real eigenvalues of a Hermitian matrix, nondecreasing.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) {
        throw dimension_mismatch("hermitian_eigenvalues: matrix not square", m.rows(), m.cols(),
                                 m.cols(), m.rows());
    }
    const double defect = hermitian_defect(m);
    if (defect > hermitian_tol) throw not_hermitian(defect);
    const ComplexMatrix::storage_type sym = 0.5 * (m.eigen() + m.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::storage_type> es(sym, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

inline double operator_norm(const ComplexMatrix& m) { return singular_values(m).front(); }

inline double min_singular(const ComplexMatrix& m) { return singular_values(m).back(); }

/// Count of sigma_i > tol * sigma_max, given nonincreasing singular values.
inline std::size_t rank_from_singular_values(std::span<const double> sigma, double tol) {
    if (sigma.empty() || sigma.front() <= 0.0) return 0;
    const double cutoff = tol * sigma.front();
    return static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(), [cutoff](double s) { return s > cutoff; }));
}

inline std::size_t numeric_rank(const ComplexMatrix& m, double tol = default_tol) {
    const auto sigma = singular_values(m);
    return rank_from_singular_values(sigma, tol);
}

/// Inverse of a square matrix whose smallest singular value exceeds
/// tol * sigma_max.  Computed from the SVD.
inline ComplexMatrix invert(const ComplexMatrix& m, double tol = default_tol) {
    if (!m.square()) {
        throw dimension_mismatch("invert: matrix not square", m.rows(), m.cols(), m.cols(),
                                 m.rows());
    }
    Eigen::BDCSVD<ComplexMatrix::storage_type> bdc(m.eigen(), Eigen::ComputeThinU |
                                                                  Eigen::ComputeThinV);
    const auto& s = bdc.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (!(smax > 0.0) || !(smin > tol * smax)) throw singular_matrix(smin, smax, tol);
    ComplexMatrix::storage_type inv =
        bdc.matrixV() * s.cwiseInverse().asDiagonal() * bdc.matrixU().adjoint();
    return ComplexMatrix(std::move(inv));
}

}  // namespace framediag

#endif  // FRAMEDIAG_LINALG_HPP
