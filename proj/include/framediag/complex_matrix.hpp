#ifndef FRAMEDIAG_COMPLEX_MATRIX_HPP
#define FRAMEDIAG_COMPLEX_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framediag/error.hpp"

namespace framediag {

using complex = std::complex<double>;

/// Dense complex matrix with finite entries.
///
/// This is the carrier for every operator in the library: synthesis and
/// analysis operators, frame operators, Gram and cross-Gram matrices.  A
/// ComplexMatrix is an immutable value; all operations return new matrices.
/// Storage is an Eigen column-major matrix, exposed read-only through
/// eigen() for the numerical kernels.
class ComplexMatrix {
public:
    using storage_type = Eigen::MatrixXcd;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : data_(storage_type::Zero(checked(rows), checked(cols))) {}

    explicit ComplexMatrix(storage_type data) : data_(std::move(data)) {
        if (data_.rows() == 0 || data_.cols() == 0) {
            throw error("ComplexMatrix requires positive dimensions");
        }
        const auto* p = data_.data();
        for (Eigen::Index i = 0; i < data_.size(); ++i) {
            if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag())) {
                throw non_finite_value("non-finite matrix entry", static_cast<std::size_t>(i));
            }
        }
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static ComplexMatrix identity(std::size_t n) {
        return ComplexMatrix(storage_type::Identity(checked(n), checked(n)));
    }

    static ComplexMatrix diagonal(std::span<const complex> values) {
        storage_type m = storage_type::Zero(checked(values.size()), checked(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
        }
        return ComplexMatrix(std::move(m));
    }

    static ComplexMatrix diagonal(std::initializer_list<complex> values) {
        return diagonal(std::span<const complex>(values.begin(), values.size()));
    }

    /// Row-major literal, e.g. from_rows({{1, 2}, {3, 4}}).
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complex>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        storage_type m(checked(r), checked(c));
        Eigen::Index i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw dimension_mismatch("ragged row literal", r, c, 1, row.size());
            }
            Eigen::Index j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return ComplexMatrix(std::move(m));
    }

    /// Columns given as vectors of equal length.
    static ComplexMatrix from_columns(const std::vector<std::vector<complex>>& columns) {
        if (columns.empty()) throw error("from_columns: no columns");
        const std::size_t r = columns.front().size();
        storage_type m(checked(r), checked(columns.size()));
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (columns[k].size() != r) {
                throw dimension_mismatch("column length mismatch at column " + std::to_string(k), r,
                                         1, columns[k].size(), 1);
            }
            for (std::size_t i = 0; i < r; ++i) {
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = columns[k][i];
            }
        }
        return ComplexMatrix(std::move(m));
    }

    std::size_t rows() const noexcept { return static_cast<std::size_t>(data_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(data_.cols()); }
    bool square() const noexcept { return data_.rows() == data_.cols(); }

    complex operator()(std::size_t i, std::size_t j) const {
        return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    std::vector<complex> column(std::size_t k) const {
        std::vector<complex> out(rows());
        for (std::size_t i = 0; i < rows(); ++i) out[i] = (*this)(i, k);
        return out;
    }

    const storage_type& eigen() const noexcept { return data_; }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
               a.data_ == b.data_;
    }

private:
    static Eigen::Index checked(std::size_t n) {
        if (n == 0) throw error("ComplexMatrix requires positive dimensions");
        return static_cast<Eigen::Index>(n);
    }

    storage_type data_;
};

}  // namespace framediag

#endif  // FRAMEDIAG_COMPLEX_MATRIX_HPP
