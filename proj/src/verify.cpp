#include "spreadforge/verify.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "spreadforge/error.hpp"
#include "spreadforge/parallel.hpp"

namespace spreadforge {

namespace {

template <class Member>
MinDistance pairwise_min(const std::vector<Member>& members, unsigned workers) {
  if (members.size() <= 1) return {0, true};
  const std::size_t n = members.size();
  workers = std::max(1u, workers);
  std::vector<std::size_t> best(workers, std::numeric_limits<std::size_t>::max());
  // Row i pairs with every j > i; interleave rows so chunks carry similar work.
  parallel_chunks(workers, workers, [&](unsigned w, std::size_t, std::size_t) {
    std::size_t local = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = w; i < n; i += workers)
      for (std::size_t j = i + 1; j < n; ++j) local = std::min(local, subspace_distance(members[i], members[j]));
    best[w] = local;
  });
  return {*std::min_element(best.begin(), best.end()), false};
}

std::uint64_t vector_index(std::span<const Elem> v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i].v;
  return idx;
}

template <class Visit>
void for_each_group_element(const GroupContext& ctx, Visit&& visit) {
  const CodeParams& p = ctx.params();
  if (p.group_order() > kMaxEnumeratedGroup)
    throw Error(Errc::GroupTooLarge, "|H|=" + std::to_string(p.group_order()) + " exceeds enumeration guard");
  Matrix ha = Matrix::identity(ctx.fqk(), p.s);
  for (std::uint64_t a = 1; a <= p.qkt - 1; ++a) {
    ha = ha * ctx.h1();
    Matrix g = ha;
    for (std::uint64_t b = 1; b <= p.qkt - 1; ++b) {
      g = g * ctx.h2();
      visit(GroupExponents{a, b}, g);
    }
  }
}

}  // namespace

MinDistance min_distance_bruteforce(const LineCode& code, unsigned workers) {
  return pairwise_min(code.members(), workers);
}

MinDistance min_distance_bruteforce(const SubspaceCode& code, unsigned workers) {
  return pairwise_min(code.members(), workers);
}

std::size_t min_distance_orbit(const GroupContext& ctx, const Line& generator,
                               const std::vector<GroupExponents>& stabilizer) {
  const std::set<GroupExponents> stab(stabilizer.begin(), stabilizer.end());
  if (stab.size() >= ctx.params().group_order()) throw Error(Errc::TrivialOrbit, "stabilizer is the whole group");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_group_element(ctx, [&](GroupExponents ab, const Matrix& g) {
    if (stab.contains(ab)) return;
    const Line image = canonical_line(ctx.fqk(), row_times(*ctx.fqk(), generator.coords(), g));
    best = std::min(best, subspace_distance(generator, image));
  });
  return best;
}

std::size_t min_distance_orbit(const GroupContext& ctx, const ReductionContext& red, const Line& generator,
                               const std::vector<GroupExponents>& stabilizer) {
  const std::set<GroupExponents> stab(stabilizer.begin(), stabilizer.end());
  if (stab.size() >= ctx.params().group_order()) throw Error(Errc::TrivialOrbit, "stabilizer is the whole group");
  const Subspace v = red.varphi(generator);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_group_element(ctx, [&](GroupExponents ab, const Matrix& g) {
    if (stab.contains(ab)) return;
    const Subspace image = canonical_subspace(v.basis() * red.psi(g));
    best = std::min(best, subspace_distance(v, image));
  });
  return best;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Spread: return "Spread";
    case Verdict::PartialSpread: return "PartialSpread";
    case Verdict::ConstantDimension: return "ConstantDimension";
    case Verdict::NotConstantDimension: return "NotConstantDimension";
  }
  return "Unknown";
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::Spread, Verdict::PartialSpread, Verdict::ConstantDimension, Verdict::NotConstantDimension})
    if (s == to_string(v)) return v;
  throw Error(Errc::MalformedHeader, "unknown verdict '" + s + "'");
}

Coverage coverage_count(const SubspaceCode& code) {
  const Field& f = *code.field();
  const std::uint64_t q = f.size();
  const std::uint64_t space = checked_pow(q, code.ambient());
  if (space > kMaxCoverageSpace) throw Error(Errc::ParameterOutOfRange, "q^n exceeds the coverage guard");
  std::vector<bool> seen(space, false);
  Coverage cov;
  const std::size_t k = code.dim();
  const std::uint64_t combos = checked_pow(q, k);
  std::vector<Elem> v(code.ambient());
  for (const auto& member : code) {
    const Matrix& basis = member.basis();
    for (std::uint64_t idx = 1; idx < combos; ++idx) {
      std::fill(v.begin(), v.end(), f.zero());
      std::uint64_t rest = idx;
      for (std::size_t r = 0; r < k; ++r) {
        const Elem coef{static_cast<std::uint32_t>(rest % q)};
        rest /= q;
        if (coef.v == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(coef, basis(r, c)));
      }
      const std::uint64_t at = vector_index(v, q);
      if (seen[at]) {
        ++cov.collisions;
      } else {
        seen[at] = true;
        ++cov.distinct;
      }
    }
  }
  return cov;
}

VerificationReport classify(const SubspaceCode& code, unsigned workers) {
  VerificationReport rep;
  rep.cardinality = code.size();
  rep.constant_dimension = true;
  rep.dimension = code.dim();
  rep.ambient = code.ambient();
  rep.field_size = code.field()->size();

  const std::uint64_t q = rep.field_size;
  const std::size_t n = rep.ambient, k = rep.dimension;
  const std::uint64_t qn = checked_pow(q, n);
  if (k > 0) {
    rep.spread_bound = n % k == 0 ? (qn - 1) / (checked_pow(q, k) - 1) : 0;
    rep.partial_spread_bound = (qn - checked_pow(q, n % k)) / (checked_pow(q, k) - 1);
  }

  const bool can_pair = rep.cardinality <= kMaxPairwiseMembers;
  const bool can_cover = qn <= kMaxCoverageSpace && k > 0;
  if (!can_pair && !can_cover) throw Error(Errc::ParameterOutOfRange, "code too large for either verification path");

  if (can_pair) {
    const MinDistance md = min_distance_bruteforce(code, workers);
    rep.pairwise_checked = true;
    rep.min_distance = md.value;
    rep.pairwise_trivial = md.singleton || (2 * k <= n && md.value == 2 * k);
  }

  if (can_cover) {
    const Coverage cov = coverage_count(code);
    rep.coverage_checked = true;
    rep.coverage = cov.distinct;
    rep.collisions = cov.collisions;
    if (!rep.pairwise_checked) {
      rep.pairwise_trivial = cov.collisions == 0;
      rep.min_distance = rep.pairwise_trivial && rep.cardinality > 1 ? 2 * k : 0;
    } else if ((cov.collisions == 0) != rep.pairwise_trivial) {
      throw Error(Errc::InternalError, "coverage collisions disagree with pairwise intersection test");
    }
  }

  const bool full_size = rep.spread_bound != 0 && rep.cardinality == rep.spread_bound;
  if (rep.coverage_checked && rep.pairwise_trivial && (rep.coverage == qn - 1) != full_size)
    throw Error(Errc::InternalError, "coverage disagrees with the cardinality criterion");

  if (rep.pairwise_trivial && full_size)
    rep.verdict = Verdict::Spread;
  else if (rep.pairwise_trivial && rep.cardinality >= 2 && rep.cardinality <= rep.partial_spread_bound)
    rep.verdict = Verdict::PartialSpread;
  else
    rep.verdict = Verdict::ConstantDimension;
  return rep;
}

VerificationReport classify(const std::vector<Subspace>& members, unsigned workers) {
  if (members.empty()) throw Error(Errc::CodeTooSmall, "nothing to classify");
  const auto& first = members.front();
  const bool constant = std::all_of(members.begin(), members.end(), [&](const Subspace& s) {
    return s.dim() == first.dim() && s.ambient() == first.ambient();
  });
  if (!constant) {
    VerificationReport rep;
    std::vector<Subspace> sorted = members;
    std::sort(sorted.begin(), sorted.end(), MemberOrder{});
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    rep.cardinality = sorted.size();
    rep.constant_dimension = false;
    rep.ambient = first.ambient();
    rep.field_size = first.field()->size();
    rep.verdict = Verdict::NotConstantDimension;
    return rep;
  }
  return classify(SubspaceCode::from_members(first.field(), first.ambient(), first.dim(), members), workers);
}

SubspaceCode desarguesian_oracle(const FieldTower& tower, const CodeParams& params) {
  const ReductionContext red(tower);
  return red.reduce_code(enumerate_lines(tower.fqk(), params.s));
}

}  // namespace spreadforge
