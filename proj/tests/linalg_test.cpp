#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "framediag/complex_matrix.hpp"
#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "oracle.hpp"

namespace fd = framediag;
using fd::complex;

TEST(ComplexMatrix, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(fd::ComplexMatrix::zeros(0, 3), fd::error);
    EXPECT_THROW(fd::ComplexMatrix::from_rows({{1.0, std::numeric_limits<double>::quiet_NaN()}}),
                 fd::non_finite_value);
    EXPECT_THROW(fd::ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), fd::dimension_mismatch);
}

TEST(ComplexMatrix, BuildersAgree) {
    const auto a = fd::ComplexMatrix::from_rows({{1.0, complex{0.0, 2.0}}, {3.0, 4.0}});
    const auto b = fd::ComplexMatrix::from_columns({{1.0, 3.0}, {complex{0.0, 2.0}, 4.0}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a(0, 1), complex(0.0, 2.0));
    EXPECT_EQ(a.column(1), (std::vector<complex>{complex{0.0, 2.0}, 4.0}));
    EXPECT_EQ(fd::ComplexMatrix::identity(3), fd::ComplexMatrix::diagonal({1.0, 1.0, 1.0}));
}

TEST(Linalg, MatmulShapeMismatch) {
    const auto a = fd::ComplexMatrix::zeros(2, 3);
    try {
        (void)fd::matmul(a, a);
        FAIL() << "expected dimension_mismatch";
    } catch (const fd::dimension_mismatch& e) {
        EXPECT_EQ(e.lhs_cols(), 3u);
        EXPECT_EQ(e.rhs_rows(), 2u);
    }
}

TEST(Linalg, ProductAndAdjointMatchOracle) {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = gen.range(1, 6), k = gen.range(1, 6), c = gen.range(1, 6);
        const auto a = gen.matrix(r, k), b = gen.matrix(k, c);
        const auto got = oracle::from(fd::matmul(oracle::to_matrix(a), oracle::to_matrix(b)));
        EXPECT_LE(oracle::max_abs(oracle::sub(got, oracle::mul(a, b))), 1e-12);
        EXPECT_EQ(oracle::from(fd::adjoint(oracle::to_matrix(a))), oracle::adj(a));
    }
}

TEST(Linalg, SingularValuesMatchJacobi) {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto r = gen.range(1, 7), c = gen.range(1, 7);
        const auto a = gen.matrix(r, c);
        const auto expected = oracle::singular_values(a);
        const auto got = fd::singular_values(oracle::to_matrix(a));
        ASSERT_EQ(got.size(), expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-9 * expected.front());
        for (std::size_t i = 1; i < got.size(); ++i) EXPECT_GE(got[i - 1], got[i]);
    }
}

TEST(Linalg, HermitianEigenvaluesMatchJacobi) {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = gen.range(1, 7);
        const auto a = gen.matrix(n, n);
        const auto h = oracle::mul(oracle::adj(a), a);
        const auto expected = oracle::hermitian_eigenvalues(h);
        const auto got = fd::hermitian_eigenvalues(oracle::to_matrix(h));
        ASSERT_EQ(got.size(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], expected[i], 1e-9 * (1.0 + expected.back()));
    }
}

TEST(Linalg, HermitianEigenvaluesRejectNonHermitian) {
    const auto m = fd::ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
    EXPECT_THROW(fd::hermitian_eigenvalues(m), fd::not_hermitian);
    EXPECT_THROW(fd::hermitian_eigenvalues(fd::ComplexMatrix::zeros(2, 3)), fd::dimension_mismatch);
    EXPECT_GT(fd::hermitian_defect(m), 0.1);
    EXPECT_TRUE(std::isinf(fd::hermitian_defect(fd::ComplexMatrix::zeros(2, 3))));
}

TEST(Linalg, InvertAndSingular) {
    const auto m = fd::ComplexMatrix::from_rows({{2.0, complex{0.0, 1.0}}, {complex{0.0, -1.0}, 3.0}});
    const auto inv = fd::invert(m);
    EXPECT_LE(fd::max_abs(fd::subtract(fd::matmul(m, inv), fd::ComplexMatrix::identity(2))), 1e-14);

    const auto s = fd::ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
    try {
        (void)fd::invert(s);
        FAIL() << "expected singular_matrix";
    } catch (const fd::singular_matrix& e) {
        EXPECT_LE(e.sigma_min(), 1e-12);
    }
}

TEST(Linalg, NumericRankUsesRelativeTolerance) {
    const auto m = fd::ComplexMatrix::diagonal({1e6, 1.0, 1e-5});
    // Relative singular values are 1, 1e-6 and 1e-11.
    EXPECT_EQ(fd::numeric_rank(m, 1e-12), 3u);
    EXPECT_EQ(fd::numeric_rank(m, 1e-10), 2u);
    EXPECT_EQ(fd::numeric_rank(m, 1e-5), 1u);
    EXPECT_EQ(fd::numeric_rank(fd::ComplexMatrix::zeros(3, 3)), 0u);
}

TEST(Linalg, NormsOnKnownMatrix) {
    // Singular values of [[3, 0], [4, 5]] are sqrt(45) and sqrt(5).
    const auto m = fd::ComplexMatrix::from_rows({{3.0, 0.0}, {4.0, 5.0}});
    EXPECT_NEAR(fd::operator_norm(m), std::sqrt(45.0), 1e-13);
    EXPECT_NEAR(fd::min_singular(m), std::sqrt(5.0), 1e-13);
    EXPECT_NEAR(fd::frobenius_norm(m), std::sqrt(50.0), 1e-13);
}
