#ifndef FRAMEDIAG_ERROR_HPP
#define FRAMEDIAG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace framediag {

/// Base class for every error raised by the library.  Each subclass carries
/// the quantity that caused the rejection so callers can report it.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible.
class dimension_mismatch : public error {
public:
    dimension_mismatch(const std::string& what, std::size_t lhs_rows, std::size_t lhs_cols,
                       std::size_t rhs_rows, std::size_t rhs_cols)
        : error(what + ": " + std::to_string(lhs_rows) + "x" + std::to_string(lhs_cols) + " vs " +
                std::to_string(rhs_rows) + "x" + std::to_string(rhs_cols)),
          lhs_rows_(lhs_rows), lhs_cols_(lhs_cols), rhs_rows_(rhs_rows), rhs_cols_(rhs_cols) {}

    std::size_t lhs_rows() const noexcept { return lhs_rows_; }
    std::size_t lhs_cols() const noexcept { return lhs_cols_; }
    std::size_t rhs_rows() const noexcept { return rhs_rows_; }
    std::size_t rhs_cols() const noexcept { return rhs_cols_; }

private:
    std::size_t lhs_rows_, lhs_cols_, rhs_rows_, rhs_cols_;
};

/// A matrix entry (or generated scalar) is NaN or infinite.
class non_finite_value : public error {
public:
    non_finite_value(const std::string& what, std::size_t index)
        : error(what + " (at index " + std::to_string(index) + ")"), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Inversion requested on a numerically singular matrix.
class singular_matrix : public error {
public:
    singular_matrix(double sigma_min, double sigma_max, double tol)
        : error("matrix is numerically singular: sigma_min=" + std::to_string(sigma_min) +
                " sigma_max=" + std::to_string(sigma_max) + " tol=" + std::to_string(tol)),
          sigma_min_(sigma_min) {}

    double sigma_min() const noexcept { return sigma_min_; }

private:
    double sigma_min_;
};

/// Hermitian-only routine called on a non-Hermitian matrix.
class not_hermitian : public error {
public:
    explicit not_hermitian(double asymmetry)
        : error("matrix is not Hermitian: relative asymmetry " + std::to_string(asymmetry)),
          asymmetry_(asymmetry) {}

    double asymmetry() const noexcept { return asymmetry_; }

private:
    double asymmetry_;
};

/// Canonical dual requested for a sequence that does not span the ambient space.
class not_spanning : public error {
public:
    explicit not_spanning(double lower_bound)
        : error("sequence does not span the ambient space: lower frame bound " +
                std::to_string(lower_bound)),
          lower_bound_(lower_bound) {}

    double lower_bound() const noexcept { return lower_bound_; }

private:
    double lower_bound_;
};

/// Malformed sequence description or an invalid request against one.
class invalid_spec : public error {
public:
    using error::error;
};

/// Sequence file or JSON document that does not match the schema.  `field`
/// is a JSON-pointer-like path; `line` is 0 when unknown.
class spec_parse_error : public invalid_spec {
public:
    spec_parse_error(const std::string& what, std::string field, std::size_t line = 0)
        : invalid_spec(compose(what, field, line)), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string compose(const std::string& what, const std::string& field, std::size_t line) {
        std::string out = what;
        if (!field.empty()) out += " (field " + field + ")";
        if (line != 0) out += " (line " + std::to_string(line) + ")";
        return out;
    }

    std::string field_;
    std::size_t line_;
};

/// Seeded generator exhausted its resampling budget.
class sampling_failure : public error {
public:
    using error::error;
};

/// A dense realization would exceed the configured entry budget.
class too_large : public error {
public:
    too_large(std::size_t rows, std::size_t cols, std::size_t budget)
        : error("dense realization of " + std::to_string(rows) + "x" + std::to_string(cols) +
                " exceeds the budget of " + std::to_string(budget) + " entries") {}
};

}  // namespace framediag

#endif  // FRAMEDIAG_ERROR_HPP
