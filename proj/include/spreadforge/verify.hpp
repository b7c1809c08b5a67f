#pragma once

// Independent checks of the claims the construction relies on. Each check
// recomputes its answer from first principles rather than trusting the
// construction path.

#include <cstdint>
#include <string>
#include <vector>

#include "spreadforge/construction.hpp"
#include "spreadforge/reduction.hpp"
#include "spreadforge/subspaces.hpp"

namespace spreadforge {

struct MinDistance {
  std::size_t value = 0;
  /// |C| ≤ 1; value is then 0 by convention.
  bool singleton = false;
};

/// Minimum over unordered pairs of the subspace distance.
MinDistance min_distance_bruteforce(const LineCode& code, unsigned workers = 1);
MinDistance min_distance_bruteforce(const SubspaceCode& code, unsigned workers = 1);

/// min d_S(V, V·A) over A ∈ H outside the stabilizer of V. Throws
/// TrivialOrbit when the stabilizer is all of H.
std::size_t min_distance_orbit(const GroupContext& ctx, const Line& generator,
                               const std::vector<GroupExponents>& stabilizer);
/// Same, for varphi(V) under psi(H).
std::size_t min_distance_orbit(const GroupContext& ctx, const ReductionContext& red, const Line& generator,
                               const std::vector<GroupExponents>& stabilizer);

enum class Verdict { Spread, PartialSpread, ConstantDimension, NotConstantDimension };

const char* to_string(Verdict v) noexcept;
Verdict verdict_from_string(const std::string& s);

struct VerificationReport {
  std::uint64_t cardinality = 0;
  bool constant_dimension = true;
  std::size_t dimension = 0;
  std::size_t ambient = 0;
  std::uint64_t field_size = 0;
  /// False when |C| exceeds the pairwise guard; min_distance and
  /// pairwise_trivial are then inferred from coverage collisions.
  bool pairwise_checked = false;
  std::size_t min_distance = 0;
  bool pairwise_trivial = false;
  /// False when q^n exceeds the coverage guard and coverage was skipped.
  bool coverage_checked = false;
  std::uint64_t coverage = 0;
  std::uint64_t collisions = 0;
  std::uint64_t spread_bound = 0;          // (q^n−1)/(q^k−1)
  std::uint64_t partial_spread_bound = 0;  // (q^n−q^m)/(q^k−1), m = n mod k
  Verdict verdict = Verdict::NotConstantDimension;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Largest code for which all pairs are compared.
inline constexpr std::uint64_t kMaxPairwiseMembers = std::uint64_t{1} << 13;
/// Largest q^n for which the coverage bit-set is built.
inline constexpr std::uint64_t kMaxCoverageSpace = std::uint64_t{1} << 26;

/// Every nonzero vector of F_q^n touched by the code, counting repeats.
struct Coverage {
  std::uint64_t distinct = 0;
  std::uint64_t collisions = 0;
};
Coverage coverage_count(const SubspaceCode& code);

/// Spread iff pairwise trivial intersections, |C| = (q^n−1)/(q^k−1), and
/// full coverage with no collisions; the three are computed independently
/// and must agree (disagreement throws InternalError).
VerificationReport classify(const SubspaceCode& code, unsigned workers = 1);
VerificationReport classify(const std::vector<Subspace>& members, unsigned workers = 1);

/// varphi(G_{q^k}(1, s)), built without any group machinery.
SubspaceCode desarguesian_oracle(const FieldTower& tower, const CodeParams& params);

/// Throws KindMismatch for codes in different Grassmannians.
template <class Member>
bool codes_equal(const Code<Member>& a, const Code<Member>& b) {
  a.require_compatible(b);
  return a == b;
}

}  // namespace spreadforge
