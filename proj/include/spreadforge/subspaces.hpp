#pragma once

// Canonical lines and subspaces, the subspace distance, and ordered codes.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "spreadforge/error.hpp"
#include "spreadforge/matrix.hpp"

namespace spreadforge {

/// Line of F^s, generator normalized so its first nonzero coordinate is 1.
class Line {
 public:
  const FieldPtr& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return coords_.size(); }
  std::size_t dim() const noexcept { return 1; }
  std::span<const Elem> coords() const noexcept { return coords_; }
  /// 1×s matrix holding the generator.
  Matrix basis() const;

  friend bool operator==(const Line& a, const Line& b) noexcept { return a.coords_ == b.coords_; }

 private:
  friend Line canonical_line(FieldPtr field, std::span<const Elem> v);
  FieldPtr field_;
  std::vector<Elem> coords_;
};

/// k-dimensional subspace of F^n held by its k×n RREF basis.
class Subspace {
 public:
  const FieldPtr& field() const noexcept { return basis_.field(); }
  std::size_t ambient() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept { return a.basis_ == b.basis_; }

 private:
  friend Subspace canonical_subspace(const Matrix& m);
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Throws ZeroVector.
Line canonical_line(FieldPtr field, std::span<const Elem> v);
/// Throws RankDeficient when the rows are linearly dependent.
Subspace canonical_subspace(const Matrix& m);

/// The line spanned by the i-th standard basis vector (0-based).
Line unit_line(FieldPtr field, std::size_t ambient, std::size_t i);

/// dim(U+V) − dim(U∩V) = 2·rank[U;V] − dim U − dim V.
std::size_t subspace_distance(const Subspace& u, const Subspace& v);
std::size_t subspace_distance(const Line& u, const Line& v);

/// Lexicographic order on the flattened base-p digit strings.
struct MemberOrder {
  bool operator()(const Line& a, const Line& b) const noexcept;
  bool operator()(const Subspace& a, const Subspace& b) const noexcept;
};

enum class CodeKind { Lines, Subspaces };

template <class Member>
class Code {
 public:
  static constexpr CodeKind kind = std::is_same_v<Member, Line> ? CodeKind::Lines : CodeKind::Subspaces;

  Code(FieldPtr field, std::size_t ambient, std::size_t dim)
      : field_(std::move(field)), ambient_(ambient), dim_(dim) {}

  /// Sorts and deduplicates; every member must match the declared shape.
  static Code from_members(FieldPtr field, std::size_t ambient, std::size_t dim,
                           std::vector<Member> members) {
    Code code(std::move(field), ambient, dim);
    for (const auto& m : members) code.check_member(m);
    std::sort(members.begin(), members.end(), MemberOrder{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    code.members_ = std::move(members);
    return code;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Member>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const Member& operator[](std::size_t i) const noexcept { return members_[i]; }

  bool contains(const Member& m) const {
    return std::binary_search(members_.begin(), members_.end(), m, MemberOrder{});
  }

  Code united(const Code& other) const {
    require_compatible(other);
    std::vector<Member> all;
    all.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(all), MemberOrder{});
    Code out(field_, ambient_, dim_);
    out.members_ = std::move(all);
    return out;
  }

  Code intersected(const Code& other) const {
    require_compatible(other);
    Code out(field_, ambient_, dim_);
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out.members_),
                          MemberOrder{});
    return out;
  }

  /// Members of *this not in other.
  Code minus(const Code& other) const {
    require_compatible(other);
    Code out(field_, ambient_, dim_);
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out.members_),
                        MemberOrder{});
    return out;
  }

  void require_compatible(const Code& other) const {
    if (ambient_ != other.ambient_ || dim_ != other.dim_ || !field_->same_as(*other.field_))
      throw Error(Errc::KindMismatch, "codes live in different Grassmannians");
  }

  friend bool operator==(const Code& a, const Code& b) noexcept {
    return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && a.members_ == b.members_;
  }

 private:
  void check_member(const Member& m) const {
    if (m.ambient() != ambient_) throw Error(Errc::AmbientMismatch, "member ambient dimension differs");
    if (m.dim() != dim_) throw Error(Errc::DimensionMismatch, "member dimension differs");
    if (!m.field()->same_as(*field_)) throw Error(Errc::LevelMismatch, "member field differs");
  }

  FieldPtr field_;
  std::size_t ambient_;
  std::size_t dim_;
  std::vector<Member> members_;
};

using LineCode = Code<Line>;
using SubspaceCode = Code<Subspace>;

/// All (Q^s − 1)/(Q − 1) lines of F_Q^s.
LineCode enumerate_lines(FieldPtr field, std::size_t s);

}  // namespace spreadforge
