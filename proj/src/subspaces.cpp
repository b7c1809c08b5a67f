#include "spreadforge/subspaces.hpp"

namespace spreadforge {

Matrix Line::basis() const {
  Matrix m(field_, 1, coords_.size());
  for (std::size_t c = 0; c < coords_.size(); ++c) m(0, c) = coords_[c];
  return m;
}

Line canonical_line(FieldPtr field, std::span<const Elem> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](Elem x) { return x.v != 0; });
  if (lead == v.end()) throw Error(Errc::ZeroVector, "a line needs a nonzero generator");
  const Elem scale = field->inv(*lead);
  Line line;
  line.coords_.reserve(v.size());
  for (Elem x : v) line.coords_.push_back(field->mul(x, scale));
  line.field_ = std::move(field);
  return line;
}

Subspace canonical_subspace(const Matrix& m) {
  auto reduced = rref(m);
  if (reduced.rank != m.rows())
    throw Error(Errc::RankDeficient,
                "rank " + std::to_string(reduced.rank) + " < " + std::to_string(m.rows()) + " rows");
  return Subspace(std::move(reduced.form));
}

Line unit_line(FieldPtr field, std::size_t ambient, std::size_t i) {
  if (i >= ambient) throw Error(Errc::IndexOutOfRange, "unit vector index out of range");
  std::vector<Elem> v(ambient, field->zero());
  v[i] = field->one();
  return canonical_line(std::move(field), v);
}

std::size_t subspace_distance(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw Error(Errc::AmbientMismatch, "ambient dimensions differ");
  if (u == v) return 0;
  // Distinct canonical lines meet trivially.
  if (u.dim() == 1 && v.dim() == 1) return 2;

  // U is already reduced, so rank[U;V] = dim U + rank of V after clearing
  // U's pivot columns. Work in a scratch buffer to keep this loop allocation-free.
  const Field& f = *u.field();
  const std::size_t n = u.ambient(), kv = v.dim();
  thread_local std::vector<Elem> w;
  w.assign(v.basis().data().begin(), v.basis().data().end());
  const Matrix& ub = u.basis();
  for (std::size_t r = 0; r < u.dim(); ++r) {
    const auto urow = ub.row(r);
    const std::size_t pc = static_cast<std::size_t>(
        std::find_if(urow.begin(), urow.end(), [](Elem x) { return x.v != 0; }) - urow.begin());
    for (std::size_t i = 0; i < kv; ++i) {
      Elem* row = w.data() + i * n;
      const Elem factor = row[pc];
      if (factor.v == 0) continue;
      for (std::size_t c = pc; c < n; ++c) row[c] = f.sub(row[c], f.mul(factor, urow[c]));
    }
  }
  std::size_t extra = 0;
  for (std::size_t col = 0; col < n && extra < kv; ++col) {
    std::size_t pivot = extra;
    while (pivot < kv && w[pivot * n + col].v == 0) ++pivot;
    if (pivot == kv) continue;
    if (pivot != extra) std::swap_ranges(w.begin() + pivot * n, w.begin() + (pivot + 1) * n, w.begin() + extra * n);
    const Elem* lead = w.data() + extra * n;
    const Elem scale = f.inv(lead[col]);
    for (std::size_t i = extra + 1; i < kv; ++i) {
      Elem* row = w.data() + i * n;
      const Elem factor = f.mul(row[col], scale);
      if (factor.v == 0) continue;
      for (std::size_t c = col; c < n; ++c) row[c] = f.sub(row[c], f.mul(factor, lead[c]));
    }
    ++extra;
  }
  return 2 * (u.dim() + extra) - u.dim() - v.dim();
}

std::size_t subspace_distance(const Line& u, const Line& v) {
  if (u.ambient() != v.ambient()) throw Error(Errc::AmbientMismatch, "ambient dimensions differ");
  return u == v ? 0 : 2;
}

namespace {

bool lex_less(const Field& f, std::span<const Elem> a, std::span<const Elem> b) noexcept {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    return f.lex_rank(a[i]) < f.lex_rank(b[i]);
  }
  return a.size() < b.size();
}

}  // namespace

bool MemberOrder::operator()(const Line& a, const Line& b) const noexcept {
  return lex_less(*a.field(), a.coords(), b.coords());
}

bool MemberOrder::operator()(const Subspace& a, const Subspace& b) const noexcept {
  return lex_less(*a.field(), a.basis().data(), b.basis().data());
}

LineCode enumerate_lines(FieldPtr field, std::size_t s) {
  const std::uint64_t q = field->size();
  std::vector<Line> lines;
  std::vector<Elem> v(s);
  for (std::size_t lead = 0; lead < s; ++lead) {
    const std::size_t free = s - lead - 1;
    const std::uint64_t count = checked_pow(q, free);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::fill(v.begin(), v.end(), field->zero());
      v[lead] = field->one();
      std::uint64_t rest = idx;
      for (std::size_t c = lead + 1; c < s; ++c) {
        v[c] = Elem{static_cast<std::uint32_t>(rest % q)};
        rest /= q;
      }
      lines.push_back(canonical_line(field, v));
    }
  }
  return LineCode::from_members(field, s, 1, std::move(lines));
}

}  // namespace spreadforge
