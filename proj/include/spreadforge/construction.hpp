#pragma once

// The Abelian non-cyclic group H = <h1> <h2> ≤ GL_s(F_{q^k}), its orbit
// codes C_i, the completion sets A_i and B_j, and the assembled k-spread.
//
//   h1 = [[C, I_t], [0, αI_t]]     h2 = [[αI_t, −I_t], [0, C]]
//
// with C = M_t^{q^k−1} of order r = (q^{kt}−1)/(q^k−1) and α primitive in
// F_{q^k}. Exponents in this API are 1-based: a, b ∈ {1, …, q^{kt}−1},
// i ∈ {1, …, t}, j ∈ {t+1, …, s}, m ∈ {1, …, r}.

#include <compare>
#include <cstdint>
#include <vector>

#include "spreadforge/gftower.hpp"
#include "spreadforge/reduction.hpp"
#include "spreadforge/subspaces.hpp"

namespace spreadforge {

struct CodeParams {
  std::uint32_t p = 2;
  unsigned e = 1, k = 1, t = 1;
  std::uint64_t q = 2;    // p^e
  std::uint64_t qk = 2;   // q^k
  std::uint64_t qkt = 4;  // q^{kt}
  unsigned s = 2;         // 2t
  unsigned n = 2;         // ks
  std::uint64_t r = 1;    // (q^{kt}−1)/(q^k−1)

  std::uint64_t group_order() const noexcept { return (qkt - 1) * (qkt - 1); }
  /// |C_i| = (q^{kt}−1)²/(q^k−1).
  std::uint64_t orbit_size() const noexcept { return (qkt - 1) * r; }
  /// (q^n−1)/(q^k−1) = r(q^{kt}+1).
  std::uint64_t spread_size() const noexcept { return (qkt + 1) * r; }
  /// q^n.
  std::uint64_t space_size() const noexcept { return qkt * qkt; }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Largest q^{kt} accepted; beyond it nothing is enumerable anyway.
inline constexpr std::uint64_t kMaxExtensionSize = std::uint64_t{1} << 22;

/// Throws NonPrimeCharacteristic, GcdConditionViolated, ParameterOutOfRange.
CodeParams validate_params(std::uint32_t p, unsigned e, unsigned k, unsigned t);

struct GroupExponents {
  std::uint64_t a = 1, b = 1;
  friend auto operator<=>(const GroupExponents&, const GroupExponents&) = default;
};

class GroupContext {
 public:
  const CodeParams& params() const noexcept { return params_; }
  const FieldTower& tower() const noexcept { return tower_; }
  const FieldPtr& fqk() const noexcept { return tower_.fqk(); }

  Elem alpha() const noexcept { return alpha_; }
  const Matrix& mt() const noexcept { return mt_; }
  const Matrix& c() const noexcept { return c_powers_[1 % c_powers_.size()]; }
  const Matrix& h1() const noexcept { return h1_; }
  const Matrix& h2() const noexcept { return h2_; }

  /// C^e, exponent reduced mod r.
  const Matrix& c_power(std::uint64_t e) const noexcept { return c_powers_[e % params_.r]; }
  /// α^e, exponent reduced mod q^k − 1.
  Elem alpha_power(std::uint64_t e) const noexcept { return alpha_powers_[e % (params_.qk - 1)]; }
  /// M_t^i for 0 ≤ i < t.
  const Matrix& mt_power(std::size_t i) const noexcept { return mt_powers_[i]; }
  /// S_n = Σ_{j=0}^{n−1} α^{n−1−j} C^j for 0 ≤ n < q^{kt}−1.
  Matrix geometric_sum(std::uint64_t n) const;

 private:
  friend GroupContext build_group(const CodeParams& params, FieldTower tower);
  GroupContext(const CodeParams& params, FieldTower tower);

  CodeParams params_;
  FieldTower tower_;
  Elem alpha_{};
  Matrix mt_, h1_, h2_;
  std::vector<Matrix> c_powers_;
  std::vector<Elem> alpha_powers_;
  std::vector<Matrix> mt_powers_;
  std::vector<Elem> sums_;  // flattened S_n table
};

/// Orders of h1 and h2 are verified when q^{kt}−1 ≤ 2^16; commutation always.
/// Throws InternalOrderCheckFailed.
GroupContext build_group(const CodeParams& params);
GroupContext build_group(const CodeParams& params, FieldTower tower);

/// D_{a,b} = Σ_{j=1}^a α^{j−1}C^{a+b−j} − Σ_{j=1}^b α^{j−1}C^{a+b−j}, term by term.
Matrix d_matrix(const GroupContext& ctx, std::uint64_t a, std::uint64_t b);
/// Same value through ±α^{min}C^{min}·S_{|a−b|}; O(t³) with the cached sums.
Matrix d_matrix_factored(const GroupContext& ctx, std::uint64_t a, std::uint64_t b);
/// Same value through the geometric series of ratio α^{−1}C, inverting
/// α^{−1}C − I. Cross-check only.
Matrix d_matrix_geometric(const GroupContext& ctx, std::uint64_t a, std::uint64_t b);

/// [[α^b C^a, D_{a,b}], [0, α^a C^b]].
Matrix group_element(const GroupContext& ctx, std::uint64_t a, std::uint64_t b);
/// h1^a · h2^b by repeated squaring.
Matrix group_product(const GroupContext& ctx, std::uint64_t a, std::uint64_t b);

/// Largest |H| accepted by the full-group enumerations.
inline constexpr std::uint64_t kMaxEnumeratedGroup = std::uint64_t{1} << 20;

/// Every (a,b) with line · h1^a h2^b = line. Throws GroupTooLarge.
std::vector<GroupExponents> stabilizer_bruteforce(const GroupContext& ctx, const Line& line);

/// Orbit under all of H. Throws GroupTooLarge.
LineCode orbit_under_h(const GroupContext& ctx, const Line& line, unsigned workers = 1);
/// Orbit under T = <h1> H_2, H_2 = <h2^{q^k−1}>.
LineCode orbit_under_t(const GroupContext& ctx, const Line& line, unsigned workers = 1);
/// C_i = Orb_T(rowsp(e_i)). Throws IndexOutOfRange.
LineCode orbit_code_ci(const GroupContext& ctx, unsigned i, unsigned workers = 1);

/// Elements g, g², …, up to the identity, in that order.
std::vector<Matrix> cyclic_subgroup(const Matrix& g, std::uint64_t max_order);
/// H_2 = <h2^{q^k−1}>.
std::vector<Matrix> subgroup_h2(const GroupContext& ctx);
/// N = <(h1 h2)^r>.
std::vector<Matrix> subgroup_n(const GroupContext& ctx);
/// T = {h1^a h2^{(q^k−1)l}}, in (a, l) order. Throws GroupTooLarge.
std::vector<Matrix> subgroup_t(const GroupContext& ctx);

/// A_m = {a·r + m | 0 ≤ a ≤ q^k−2}. Throws IndexOutOfRange.
std::vector<std::uint64_t> partition_am(const CodeParams& params, std::uint64_t m);

/// First element of F_{q^k}[M_t], in little-endian coefficient order starting
/// at zero, distinct from every D_{a,(q^k−1)l} with a ∈ A_m, 1 ≤ l ≤ r.
Matrix search_bm(const GroupContext& ctx, std::uint64_t m);

struct CompletionChoice {
  unsigned i = 1;
  unsigned j = 2;
  std::vector<Matrix> b;  // b[m−1] = B_m
};

/// Runs search_bm for every m. Throws IndexOutOfRange on bad (i, j).
CompletionChoice completion_choice(const GroupContext& ctx, unsigned i, unsigned j);

/// A_i = {rowsp((C^m | B_m)_i) | 1 ≤ m ≤ r}.
LineCode completion_ai(const GroupContext& ctx, const CompletionChoice& choice);
/// B_j = Orb_{H_2}(rowsp(e_j)). Throws IndexOutOfRange.
LineCode completion_bj(const GroupContext& ctx, unsigned j);

struct LinePartition {
  LineCode c, a, b;
  CompletionChoice choice;
};

LinePartition assemble_line_partition(const GroupContext& ctx, unsigned i, unsigned j, unsigned workers = 1);

struct SpreadAssembly {
  LinePartition lines;
  SubspaceCode c_bar, a_bar, b_bar;
  SubspaceCode spread;
};

/// varphi(C_i) ∪ varphi(A_i) ∪ varphi(B_j).
SpreadAssembly assemble_spread(const GroupContext& ctx, const ReductionContext& red, unsigned i, unsigned j,
                               unsigned workers = 1);

}  // namespace spreadforge
