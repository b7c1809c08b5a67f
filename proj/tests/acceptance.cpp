// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check is exact; time limits are wall-clock.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "spreadforge/codecs.hpp"
#include "spreadforge/construction.hpp"
#include "spreadforge/reduction.hpp"
#include "spreadforge/verify.hpp"

#ifndef SPREADFORGE_CLI_PATH
#define SPREADFORGE_CLI_PATH "spreadforge"
#endif
#ifndef SPREADFORGE_GOLDEN_DIR
#define SPREADFORGE_GOLDEN_DIR "tests/golden"
#endif

using namespace spreadforge;
namespace fs = std::filesystem;

namespace {

struct Quad {
  std::uint32_t p;
  unsigned e, k, t;
};

const std::vector<Quad> kFour = {{2, 1, 1, 2}, {2, 1, 1, 3}, {2, 1, 2, 2}, {2, 2, 1, 2}};

std::string label(const Quad& x) {
  std::ostringstream os;
  os << "(" << x.p << "," << x.e << "," << x.k << "," << x.t << ")";
  return os.str();
}

// Thrown by check() so a criterion stops at its first failed fact.
struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

using MatrixSet = std::set<std::vector<Elem>>;

MatrixSet as_set(const std::vector<Matrix>& ms) {
  MatrixSet out;
  for (const auto& m : ms) out.insert(m.data());
  return out;
}

GroupContext group_for(const Quad& x) { return build_group(validate_params(x.p, x.e, x.k, x.t)); }

// ---------------------------------------------------------------------------

void generator_laws() {
  for (const auto& x : kFour) {
    const auto ctx = group_for(x);
    const auto& p = ctx.params();
    check(matrix_order(ctx.h1(), p.qkt - 1) == p.qkt - 1, "o(h1) at " + label(x));
    check(matrix_order(ctx.h2(), p.qkt - 1) == p.qkt - 1, "o(h2) at " + label(x));
    check(ctx.h1() * ctx.h2() == ctx.h2() * ctx.h1(), "h1h2 = h2h1 at " + label(x));
    const MatrixSet g1 = as_set(cyclic_subgroup(ctx.h1(), p.qkt));
    const MatrixSet g2 = as_set(cyclic_subgroup(ctx.h2(), p.qkt));
    std::vector<std::vector<Elem>> common;
    std::set_intersection(g1.begin(), g1.end(), g2.begin(), g2.end(), std::back_inserter(common));
    check(common.size() == 1 && common[0] == Matrix::identity(ctx.fqk(), p.s).data(),
          "<h1> ∩ <h2> = {I} at " + label(x));
  }
}

void d_law() {
  for (const Quad& x : {Quad{2, 1, 1, 2}, Quad{2, 1, 2, 2}}) {
    const auto ctx = group_for(x);
    const auto top = ctx.params().qkt - 1;
    std::size_t pairs = 0;
    for (std::uint64_t a = 1; a <= top; ++a)
      for (std::uint64_t b = 1; b <= top; ++b, ++pairs) {
        const Matrix d = d_matrix(ctx, a, b);
        check(d.is_zero() == (a == b), "D_{a,b} = 0 iff a = b at " + label(x));
        check(group_element(ctx, a, b) == group_product(ctx, a, b), "block formula at " + label(x));
      }
    check(pairs == top * top, "pair count at " + label(x));
  }
}

void stabilizer_theorem() {
  const auto ctx = group_for({2, 1, 2, 2});
  const auto& p = ctx.params();
  const MatrixSet n = as_set(subgroup_n(ctx));
  MatrixSet scalars;
  for (std::uint64_t j = 0; j < p.qk - 1; ++j)
    scalars.insert(scaled(Matrix::identity(ctx.fqk(), p.s), ctx.alpha_power(j)).data());
  check(n == scalars, "<(h1h2)^r> = <αI>");
  for (unsigned i = 1; i <= p.t; ++i) {
    const auto stab = stabilizer_bruteforce(ctx, unit_line(ctx.fqk(), p.s, i - 1));
    check(stab.size() == p.qk - 1, "|Stab(e_" + std::to_string(i) + ")| = 3");
    std::vector<Matrix> elems;
    for (auto ab : stab) elems.push_back(group_element(ctx, ab.a, ab.b));
    check(as_set(elems) == scalars, "Stab(e_" + std::to_string(i) + ") = <αI>");
  }
}

void subgroup_factorization() {
  for (const Quad& x : {Quad{2, 1, 1, 2}, Quad{2, 1, 2, 2}}) {
    const auto ctx = group_for(x);
    const auto& p = ctx.params();
    const auto h2 = subgroup_h2(ctx);
    check(h2.size() == p.r && as_set(h2).size() == p.r, "|H2| = r at " + label(x));
    const MatrixSet n = as_set(subgroup_n(ctx));
    const MatrixSet t = as_set(subgroup_t(ctx));
    std::vector<std::vector<Elem>> common;
    std::set_intersection(n.begin(), n.end(), t.begin(), t.end(), std::back_inserter(common));
    check(common.size() == 1 && common[0] == Matrix::identity(ctx.fqk(), p.s).data(), "N ∩ T = {I} at " + label(x));
    check(n.size() * t.size() == p.group_order(), "|N||T| = |H| at " + label(x));
    for (unsigned i = 1; i <= p.t; ++i) {
      const Line e = unit_line(ctx.fqk(), p.s, i - 1);
      check(orbit_under_h(ctx, e) == orbit_under_t(ctx, e), "Orb_H = Orb_T for i=" + std::to_string(i) + " at " + label(x));
    }
  }
}

void orbit_sizes() {
  const std::vector<std::uint64_t> expected = {9, 49, 75, 75};
  for (std::size_t idx = 0; idx < kFour.size(); ++idx) {
    const auto ctx = group_for(kFour[idx]);
    for (unsigned i = 1; i <= ctx.params().t; ++i)
      check(orbit_code_ci(ctx, i).size() == expected[idx],
            "|C_" + std::to_string(i) + "| = " + std::to_string(expected[idx]) + " at " + label(kFour[idx]));
  }
}

void partition_theorem() {
  const std::vector<std::uint64_t> total = {15, 63, 85, 85};
  for (std::size_t idx = 0; idx < kFour.size(); ++idx) {
    const auto ctx = group_for(kFour[idx]);
    const auto& p = ctx.params();
    const LineCode all = enumerate_lines(ctx.fqk(), p.s);
    check(all.size() == total[idx], "line count at " + label(kFour[idx]));
    for (unsigned i = 1; i <= p.t; ++i)
      for (unsigned j = p.t + 1; j <= p.s; ++j) {
        const std::string tag = " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ") at " + label(kFour[idx]);
        const auto part = assemble_line_partition(ctx, i, j);
        check(part.a.size() == p.r && part.b.size() == p.r, "|A_i| = |B_j| = r" + tag);
        check(part.c.intersected(part.a).empty() && part.c.intersected(part.b).empty() &&
                  part.a.intersected(part.b).empty(),
              "pairwise disjoint" + tag);
        check(part.c.united(part.a).united(part.b) == all, "union is every line" + tag);
      }
  }
}

void final_spread() {
  const std::vector<std::uint64_t> size = {15, 63, 85, 85};
  const std::vector<std::uint64_t> coverage = {15, 63, 255, 255};
  const std::vector<std::size_t> distance = {2, 2, 4, 2};
  for (std::size_t idx = 0; idx < kFour.size(); ++idx) {
    const auto ctx = group_for(kFour[idx]);
    const auto& p = ctx.params();
    const ReductionContext red(ctx.tower());
    const SubspaceCode oracle = desarguesian_oracle(ctx.tower(), p);
    for (unsigned i = 1; i <= p.t; ++i)
      for (unsigned j = p.t + 1; j <= p.s; ++j) {
        const std::string tag = " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ") at " + label(kFour[idx]);
        const auto spread = assemble_spread(ctx, red, i, j).spread;
        check(codes_equal(spread, oracle), "spread = Desarguesian oracle" + tag);
        const auto rep = classify(spread, 1);
        check(rep.verdict == Verdict::Spread, "verdict Spread" + tag);
        check(rep.cardinality == size[idx], "cardinality" + tag);
        check(rep.coverage_checked && rep.coverage == coverage[idx] && rep.collisions == 0, "coverage" + tag);
        const auto md = min_distance_bruteforce(spread, 1);
        check(!md.singleton && md.value == distance[idx] && md.value == 2 * p.k, "min distance 2k" + tag);
      }
  }
}

void partial_spread_facts() {
  for (const auto& x : kFour) {
    const auto ctx = group_for(x);
    const auto& p = ctx.params();
    const ReductionContext red(ctx.tower());
    const std::uint64_t bound = (p.space_size() - 1) / (p.qk - 1);
    for (unsigned i = 1; i <= p.t; ++i) {
      const SubspaceCode c_bar = red.reduce_code(orbit_code_ci(ctx, i));
      check(c_bar.size() + 2 * p.r == bound, "|C̄_i| + 2r = (q^n−1)/(q^k−1) at " + label(x));
      check(c_bar.size() <= bound, "|C̄_i| ≤ bound at " + label(x));
      const auto rep = classify(c_bar, 1);
      check(rep.verdict == Verdict::PartialSpread && rep.partial_spread_bound == bound,
            "C̄_i is a partial spread at " + label(x));
    }
  }
}

void map_laws() {
  // Every tower with q^k ≤ 16.
  const std::vector<Quad> towers = {{2, 1, 1, 1}, {2, 1, 2, 1}, {2, 1, 3, 1}, {2, 1, 4, 1}, {2, 2, 1, 1},
                                    {2, 2, 2, 1}, {2, 3, 1, 1}, {2, 4, 1, 1}, {3, 1, 1, 1}, {3, 1, 2, 1},
                                    {3, 2, 1, 1}, {5, 1, 1, 1}, {7, 1, 1, 1}, {11, 1, 1, 1}, {13, 1, 1, 1}};
  for (const auto& x : towers) {
    const auto tower = FieldTower::build(x.p, x.e, x.k, x.t);
    const ReductionContext red(tower);
    const Field& f = *tower.fqk();
    for (std::uint32_t u = 0; u < f.size(); ++u)
      for (std::uint32_t v = 0; v < f.size(); ++v) {
        check(red.phi(f.add({u}, {v})) == red.phi({u}) + red.phi({v}), "phi additive at " + label(x));
        check(red.phi(f.mul({u}, {v})) == red.phi({u}) * red.phi({v}), "phi multiplicative at " + label(x));
      }
  }

  const auto tower = FieldTower::build(2, 1, 2, 2);
  const ReductionContext red(tower);
  const FieldPtr f = tower.fqk();
  const LineCode lines = enumerate_lines(f, 4);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->size() - 1));
  std::size_t sampled = 0;
  while (sampled < 100) {
    Matrix a(f, 4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) a(r, c) = Elem{pick(rng)};
    if (rank(a) < 4) continue;
    ++sampled;
    const Matrix pa = red.psi(a);
    for (const Line& v : lines) {
      const Subspace lhs = red.varphi(canonical_line(f, row_times(*f, v.coords(), a)));
      const Subspace rhs = canonical_subspace(red.varphi(v).basis() * pa);
      check(lhs == rhs, "varphi(V·A) = varphi(V)·psi(A)");
    }
  }
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void run_construct(const fs::path& out, const std::string& quad) {
  fs::remove_all(out);
  const std::string cmd = std::string("\"") + SPREADFORGE_CLI_PATH + "\" construct " + quad + " --out \"" +
                          out.string() + "\" --workers 1 > /dev/null";
  check(std::system(cmd.c_str()) == 0, "construct exited 0 for " + quad);
}

void determinism() {
  const fs::path base = fs::temp_directory_path() / ("spreadforge-accept-" + std::to_string(::getpid()));
  const fs::path golden = SPREADFORGE_GOLDEN_DIR;
  struct Case {
    std::string flags, dir;
  };
  for (const Case& c : {Case{"--p 2 --e 1 --k 2 --t 2", "p2e1k2t2"}, Case{"--p 2 --e 1 --k 1 --t 2", "p2e1k1t2"}}) {
    run_construct(base / "run1", c.flags);
    run_construct(base / "run2", c.flags);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(golden / c.dir)) {
      const auto name = entry.path().filename();
      const std::string g = slurp(entry.path());
      check(slurp(base / "run1" / name) == slurp(base / "run2" / name), "two runs agree on " + name.string());
      check(slurp(base / "run1" / name) == g, "golden file matches: " + c.dir + "/" + name.string());
      ++files;
    }
    check(files == 4, "four golden files for " + c.dir);
  }
  fs::remove_all(base);
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "generator laws", 5, generator_laws},
      {2, "D_{a,b} law", 5, d_law},
      {3, "stabilizer theorem", 5, stabilizer_theorem},
      {4, "subgroup factorization", 10, subgroup_factorization},
      {5, "orbit sizes", 0, orbit_sizes},
      {6, "partition theorem", 30, partition_theorem},
      {7, "final spread", 60, final_spread},
      {8, "partial-spread facts", 0, partial_spread_facts},
      {9, "map laws", 30, map_laws},
      {10, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0 && secs > c.limit_seconds) {
      ok = false;
      detail = "exceeded " + std::to_string(c.limit_seconds) + " s";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing << "]";
    if (!ok) std::cout << " -- " << detail;
    std::cout << std::endl;
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
