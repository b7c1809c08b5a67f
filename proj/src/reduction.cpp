#include "spreadforge/reduction.hpp"

#include "spreadforge/error.hpp"

namespace spreadforge {

ReductionContext::ReductionContext(const FieldTower& tower)
    : fq_(tower.fq()),
      fqk_(tower.fqk()),
      k_(tower.k()),
      companion_(companion_matrix(tower.fq(), tower.fqk()->modulus())) {
  const std::uint64_t order = fqk_->size() - 1;
  powers_.reserve(order);
  powers_.push_back(Matrix::identity(fq_, k_));
  for (std::uint64_t i = 1; i < order; ++i) powers_.push_back(powers_.back() * companion_);
}

Matrix ReductionContext::phi(Elem u) const {
  if (!fqk_->contains(u)) throw Error(Errc::LevelMismatch, "phi expects an element of F_{q^k}");
  Matrix out(fq_, k_, k_);
  const auto coeffs = fqk_->coefficients(u);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].v == 0) continue;
    out = out + scaled(powers_[i % powers_.size()], coeffs[i]);
  }
  return out;
}

Subspace ReductionContext::varphi(const Line& line) const {
  if (!line.field()->same_as(*fqk_)) throw Error(Errc::LevelMismatch, "varphi expects a line over F_{q^k}");
  std::vector<Matrix> blocks;
  blocks.reserve(line.ambient());
  for (Elem u : line.coords()) blocks.push_back(phi(u));
  return canonical_subspace(hstack(blocks));
}

Matrix ReductionContext::psi(const Matrix& a) const {
  if (!a.field()->same_as(*fqk_)) throw Error(Errc::LevelMismatch, "psi expects a matrix over F_{q^k}");
  if (a.rows() != a.cols() || rank(a) != a.rows()) throw Error(Errc::SingularInput, "psi needs an invertible matrix");
  Matrix out(fq_, a.rows() * k_, a.cols() * k_);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Matrix block = phi(a(i, j));
      for (std::size_t r = 0; r < k_; ++r)
        for (std::size_t c = 0; c < k_; ++c) out(i * k_ + r, j * k_ + c) = block(r, c);
    }
  }
  return out;
}

SubspaceCode ReductionContext::reduce_code(const LineCode& code) const {
  std::vector<Subspace> out;
  out.reserve(code.size());
  for (const auto& line : code) out.push_back(varphi(line));
  return SubspaceCode::from_members(fq_, code.ambient() * k_, k_, std::move(out));
}

}  // namespace spreadforge
