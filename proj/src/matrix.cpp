#include "spreadforge/matrix.hpp"

#include <algorithm>
#include <string>

#include "spreadforge/error.hpp"

namespace spreadforge {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, Elem{0}) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::DimensionMismatch, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m.field_->contains(rows[r][c])) throw Error(Errc::LevelMismatch, "entry outside field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_values(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
  std::vector<std::vector<Elem>> elems;
  for (const auto& r : rows) {
    auto& out = elems.emplace_back();
    for (auto v : r) out.push_back(Elem{v});
  }
  return from_rows(std::move(field), elems);
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x.v == 0; });
}

bool Matrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c).v != (r == c ? 1u : 0u)) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) noexcept {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
         a.field_->same_as(*b.field_);
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!a.field()->same_as(*b.field()))
    throw Error(Errc::LevelMismatch, "matrices live over different fields");
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "shape mismatch");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.field(), a.rows(), a.cols());
  const Field& f = *a.field();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out(a.field(), a.rows(), a.cols());
  const Field& f = *a.field();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.sub(a(r, c), b(r, c));
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x.v == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  }
  return out;
}

Matrix scaled(const Matrix& a, Elem s) {
  Matrix out(a.field(), a.rows(), a.cols());
  const Field& f = *a.field();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.mul(a(r, c), s);
  return out;
}

Matrix power(const Matrix& a, std::uint64_t e) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "power of non-square matrix");
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::vector<Elem> row_times(const Field& f, std::span<const Elem> v, const Matrix& m) {
  if (v.size() != m.rows()) throw Error(Errc::DimensionMismatch, "vector length differs from rows");
  std::vector<Elem> out(m.cols(), f.zero());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].v == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[i], m(i, j)));
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw Error(Errc::DimensionMismatch, "nothing to stack");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front(), b);
    if (b.rows() != blocks.front().rows()) throw Error(Errc::DimensionMismatch, "row counts differ");
    cols += b.cols();
  }
  Matrix out(blocks.front().field(), blocks.front().rows(), cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  require_same_field(top, bottom);
  if (top.cols() != bottom.cols()) throw Error(Errc::DimensionMismatch, "column counts differ");
  Matrix out(top.field(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  return out;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  return vstack(hstack({a, b}), hstack({c, d}));
}

Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols())
    throw Error(Errc::DimensionMismatch, "submatrix out of bounds");
  Matrix out(m.field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(r0 + r, c0 + c);
  return out;
}

RrefResult rref(const Matrix& m) {
  const Field& f = *m.field();
  RrefResult res{m, 0, {}};
  Matrix& a = res.form;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
    std::size_t pivot = lead;
    while (pivot < a.rows() && a(pivot, col).v == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != lead)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(lead, c));
    const Elem scale = f.inv(a(lead, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(lead, c) = f.mul(a(lead, c), scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead) continue;
      const Elem factor = a(r, col);
      if (factor.v == 0) continue;
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(lead, c)));
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.rank = lead;
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::SingularInput, "non-square matrix");
  const std::size_t n = m.rows();
  auto reduced = rref(hstack({m, Matrix::identity(m.field(), n)}));
  if (reduced.rank < n || reduced.pivots[n - 1] != n - 1)
    throw Error(Errc::SingularInput, "matrix is singular");
  return submatrix(reduced.form, 0, n, n, n);
}

Matrix companion_matrix(FieldPtr field, std::span<const Elem> modulus) {
  if (modulus.size() < 2) throw Error(Errc::InvalidModulus, "modulus degree must be at least 1");
  if (modulus.back() != field->one()) throw Error(Errc::NonMonicModulus, "modulus must be monic");
  const std::size_t d = modulus.size() - 1;
  Matrix out(field, d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) out(i, i + 1) = field->one();
  for (std::size_t j = 0; j < d; ++j) out(d - 1, j) = field->neg(modulus[j]);
  return out;
}

Matrix evaluate_polynomial(std::span<const Elem> poly, const Matrix& m) {
  Matrix acc(m.field(), m.rows(), m.cols());
  const Matrix id = Matrix::identity(m.field(), m.rows());
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * m + scaled(id, poly[i]);
  return acc;
}

std::optional<std::uint64_t> matrix_order(const Matrix& m, std::uint64_t group_exponent) {
  if (!power(m, group_exponent).is_identity()) return std::nullopt;
  std::uint64_t order = group_exponent;
  for (auto l : prime_factors(group_exponent))
    while (order % l == 0 && power(m, order / l).is_identity()) order /= l;
  return order;
}

}  // namespace spreadforge
