#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spreadforge/gftower.hpp"

namespace spreadforge {

/// Dense row-major matrix over one level of a field tower.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows);
  /// Matrix over the prime-field-valued integers, convenient in tests.
  static Matrix from_values(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Elem>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, Elem s);
Matrix power(const Matrix& a, std::uint64_t e);

/// Row vector times matrix.
std::vector<Elem> row_times(const Field& field, std::span<const Elem> v, const Matrix& m);

Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// [[a, b], [c, d]].
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols);

struct RrefResult {
  Matrix form;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form: pivots equal 1, pivot columns strictly
/// increasing, zeros above and below every pivot, zero rows last.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Throws SingularInput for non-square or singular input.
Matrix inverse(const Matrix& m);

/// d×d companion matrix of a monic modulus (constant term first): ones on
/// the superdiagonal, last row the negated low coefficients.
Matrix companion_matrix(FieldPtr field, std::span<const Elem> modulus);

/// Evaluates a polynomial (constant term first) at a square matrix.
Matrix evaluate_polynomial(std::span<const Elem> poly, const Matrix& m);

/// Multiplicative order of an invertible matrix known to satisfy
/// m^group_exponent = I; nullopt when it does not.
std::optional<std::uint64_t> matrix_order(const Matrix& m, std::uint64_t group_exponent);

void require_same_field(const Matrix& a, const Matrix& b);

}  // namespace spreadforge
