#pragma once

// Field reduction: F_{q^k} elements to k×k matrices over F_q (phi), lines of
// F_{q^k}^s to k-dimensional subspaces of F_q^{ks} (varphi), and invertible
// s×s matrices over F_{q^k} to invertible ks×ks matrices over F_q (psi).
// varphi(V·A) = varphi(V)·psi(A), so orbits transport across the maps.

#include <vector>

#include "spreadforge/gftower.hpp"
#include "spreadforge/subspaces.hpp"

namespace spreadforge {

class ReductionContext {
 public:
  explicit ReductionContext(const FieldTower& tower);

  const FieldPtr& fq() const noexcept { return fq_; }
  const FieldPtr& fqk() const noexcept { return fqk_; }
  unsigned k() const noexcept { return k_; }

  /// M_k, the companion matrix of the F_q → F_{q^k} modulus.
  const Matrix& companion() const noexcept { return companion_; }
  /// M_k^i for 0 ≤ i < q^k − 1.
  const Matrix& companion_power(std::uint64_t i) const noexcept { return powers_[i % powers_.size()]; }

  /// Σ b_i M_k^i over the coefficients b_i of u. Throws LevelMismatch.
  Matrix phi(Elem u) const;
  Subspace varphi(const Line& line) const;
  /// Block matrix (phi(a_ij)). Throws SingularInput.
  Matrix psi(const Matrix& a) const;
  SubspaceCode reduce_code(const LineCode& code) const;

 private:
  FieldPtr fq_, fqk_;
  unsigned k_;
  Matrix companion_;
  std::vector<Matrix> powers_;
};

}  // namespace spreadforge
