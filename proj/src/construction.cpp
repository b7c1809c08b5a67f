#include "spreadforge/construction.hpp"

#include <mutex>
#include <numeric>
#include <set>

#include "spreadforge/error.hpp"
#include "spreadforge/parallel.hpp"

namespace spreadforge {

namespace {

constexpr std::uint64_t kOrderCheckLimit = std::uint64_t{1} << 16;
constexpr std::uint64_t kMaxSumTable = std::uint64_t{1} << 24;

void require_exponent(const CodeParams& p, std::uint64_t x, const char* name) {
  if (x < 1 || x > p.qkt - 1)
    throw Error(Errc::ExponentOutOfRange, std::string(name) + "=" + std::to_string(x) + " outside [1, " +
                                              std::to_string(p.qkt - 1) + "]");
}

void require_i(const CodeParams& p, unsigned i) {
  if (i < 1 || i > p.t)
    throw Error(Errc::IndexOutOfRange, "i=" + std::to_string(i) + " outside [1, " + std::to_string(p.t) + "]");
}

void require_j(const CodeParams& p, unsigned j) {
  if (j < p.t + 1 || j > p.s)
    throw Error(Errc::IndexOutOfRange,
                "j=" + std::to_string(j) + " outside [" + std::to_string(p.t + 1) + ", " + std::to_string(p.s) + "]");
}

Matrix scalar_identity(const FieldPtr& f, std::size_t n, Elem x) { return scaled(Matrix::identity(f, n), x); }

// Collects canonical lines from worker-local buffers.
LineCode lines_from(const GroupContext& ctx, std::vector<std::vector<Line>> parts) {
  std::vector<Line> all;
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  all.reserve(total);
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
  return LineCode::from_members(ctx.fqk(), ctx.params().s, 1, std::move(all));
}

}  // namespace

CodeParams validate_params(std::uint32_t p, unsigned e, unsigned k, unsigned t) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (e == 0 || k == 0 || t == 0) throw Error(Errc::ParameterOutOfRange, "e, k, t must be positive");
  CodeParams cp;
  cp.p = p;
  cp.e = e;
  cp.k = k;
  cp.t = t;
  cp.q = checked_pow(p, e);
  cp.qk = checked_pow(cp.q, k);
  cp.qkt = checked_pow(cp.qk, t);
  if (cp.qkt > kMaxExtensionSize)
    throw Error(Errc::ParameterOutOfRange,
                "q^{kt}=" + std::to_string(cp.qkt) + " exceeds " + std::to_string(kMaxExtensionSize));
  // With q^{kt} = 2 we get α = C = 1 and h1 = [[1, 1], [0, 1]] of order 2,
  // so H = {h1^a h2^b | 1 ≤ a, b ≤ 1} is not a group.
  if (cp.qkt == 2)
    throw Error(Errc::ParameterOutOfRange, "q^{kt} = 2 is degenerate: h1 has order 2, not q^{kt}-1 = 1");
  cp.s = 2 * t;
  cp.n = k * cp.s;
  cp.r = (cp.qkt - 1) / (cp.qk - 1);
  const std::uint64_t g = std::gcd<std::uint64_t>(t, cp.qk - 1);
  if (g != 1)
    throw Error(Errc::GcdConditionViolated, "gcd(t, q^k-1) = gcd(" + std::to_string(t) + ", " +
                                                std::to_string(cp.qk - 1) + ") = " + std::to_string(g));
  if (std::gcd(cp.r, cp.qk - 1) != 1) throw Error(Errc::InternalError, "gcd(r, q^k-1) != 1 despite gcd(t, q^k-1) = 1");
  if (cp.r * (cp.qk - 1) != cp.qkt - 1) throw Error(Errc::InternalError, "r(q^k-1) != q^{kt}-1");
  return cp;
}

// ---------------------------------------------------------------------------
// GroupContext

GroupContext::GroupContext(const CodeParams& params, FieldTower tower)
    : params_(params),
      tower_(std::move(tower)),
      alpha_(tower_.fqk()->generator()),
      mt_(companion_matrix(tower_.fqk(), tower_.aux_modulus())),
      h1_(tower_.fqk(), params.s, params.s),
      h2_(tower_.fqk(), params.s, params.s) {
  const FieldPtr& f = tower_.fqk();
  const std::size_t t = params_.t;

  const Matrix c = power(mt_, params_.qk - 1);
  c_powers_.reserve(params_.r);
  c_powers_.push_back(Matrix::identity(f, t));
  for (std::uint64_t i = 1; i < params_.r; ++i) c_powers_.push_back(c_powers_.back() * c);

  alpha_powers_.reserve(params_.qk - 1);
  for (std::uint64_t i = 0; i < params_.qk - 1; ++i) alpha_powers_.push_back(f->pow(alpha_, i));

  mt_powers_.push_back(Matrix::identity(f, t));
  for (std::size_t i = 1; i < t; ++i) mt_powers_.push_back(mt_powers_.back() * mt_);

  const Matrix id = Matrix::identity(f, t);
  const Matrix zero(f, t, t);
  const Matrix alpha_id = scalar_identity(f, t, alpha_);
  h1_ = block2x2(c, id, zero, alpha_id);
  h2_ = block2x2(alpha_id, scaled(id, f->neg(f->one())), zero, c);

  // S_{n+1} = α S_n + C^n.
  const std::uint64_t count = params_.qkt - 1;
  if (count * t * t <= kMaxSumTable) {
    sums_.assign(count * t * t, Elem{0});
    Matrix s(f, t, t);
    for (std::uint64_t n = 0; n < count; ++n) {
      std::copy(s.data().begin(), s.data().end(), sums_.begin() + static_cast<std::ptrdiff_t>(n * t * t));
      s = scaled(s, alpha_) + c_power(n);
    }
  }
}

Matrix GroupContext::geometric_sum(std::uint64_t n) const {
  const FieldPtr& f = tower_.fqk();
  const std::size_t t = params_.t;
  Matrix s(f, t, t);
  if (!sums_.empty() && n < params_.qkt - 1) {
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t c = 0; c < t; ++c) s(r, c) = sums_[n * t * t + r * t + c];
    return s;
  }
  for (std::uint64_t i = 0; i < n; ++i) s = scaled(s, alpha_) + c_power(i);
  return s;
}

GroupContext build_group(const CodeParams& params) {
  return build_group(params, FieldTower::build(params.p, params.e, params.k, params.t));
}

GroupContext build_group(const CodeParams& params, FieldTower tower) {
  if (tower.p() != params.p || tower.e() != params.e || tower.k() != params.k || tower.t() != params.t)
    throw Error(Errc::ParameterOutOfRange, "tower does not match parameters");
  GroupContext ctx(params, std::move(tower));

  const std::uint64_t n = params.qkt - 1;
  if (matrix_order(ctx.mt_, n) != n) throw Error(Errc::InternalOrderCheckFailed, "o(M_t) != q^{kt}-1");
  if (matrix_order(ctx.c(), params.r) != params.r) throw Error(Errc::InternalOrderCheckFailed, "o(C) != r");
  if (element_order(*ctx.fqk(), ctx.alpha_) != params.qk - 1)
    throw Error(Errc::InternalOrderCheckFailed, "o(alpha) != q^k-1");
  if (!(ctx.h1_ * ctx.h2_ == ctx.h2_ * ctx.h1_)) throw Error(Errc::InternalOrderCheckFailed, "h1 h2 != h2 h1");
  if (n <= kOrderCheckLimit) {
    if (matrix_order(ctx.h1_, n) != n) throw Error(Errc::InternalOrderCheckFailed, "o(h1) != q^{kt}-1");
    if (matrix_order(ctx.h2_, n) != n) throw Error(Errc::InternalOrderCheckFailed, "o(h2) != q^{kt}-1");
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Closed forms

Matrix d_matrix(const GroupContext& ctx, std::uint64_t a, std::uint64_t b) {
  const CodeParams& p = ctx.params();
  require_exponent(p, a, "a");
  require_exponent(p, b, "b");
  const FieldPtr& f = ctx.fqk();
  Matrix plus(f, p.t, p.t), minus(f, p.t, p.t);
  for (std::uint64_t j = 1; j <= a; ++j) plus = plus + scaled(ctx.c_power(a + b - j), ctx.alpha_power(j - 1));
  for (std::uint64_t j = 1; j <= b; ++j) minus = minus + scaled(ctx.c_power(a + b - j), ctx.alpha_power(j - 1));
  return plus - minus;
}

Matrix d_matrix_factored(const GroupContext& ctx, std::uint64_t a, std::uint64_t b) {
  const CodeParams& p = ctx.params();
  require_exponent(p, a, "a");
  require_exponent(p, b, "b");
  const FieldPtr& f = ctx.fqk();
  if (a == b) return Matrix(f, p.t, p.t);
  const std::uint64_t lo = std::min(a, b);
  Matrix d = scaled(ctx.c_power(lo), ctx.alpha_power(lo)) * ctx.geometric_sum(std::max(a, b) - lo);
  return a > b ? d : scaled(d, f->neg(f->one()));
}

Matrix d_matrix_geometric(const GroupContext& ctx, std::uint64_t a, std::uint64_t b) {
  const CodeParams& p = ctx.params();
  require_exponent(p, a, "a");
  require_exponent(p, b, "b");
  const FieldPtr& f = ctx.fqk();
  if (a == b) return Matrix(f, p.t, p.t);
  const std::uint64_t lo = std::min(a, b), diff = std::max(a, b) - lo;
  const Matrix id = Matrix::identity(f, p.t);
  const Matrix ratio = scaled(ctx.c(), f->inv(ctx.alpha()));
  // α^{diff−1} ((α^{−1}C)^{diff} − I)(α^{−1}C − I)^{−1}
  const Matrix series = (power(ratio, diff) - id) * inverse(ratio - id);
  Matrix d = scaled(ctx.c_power(lo), ctx.alpha_power(lo)) * scaled(series, ctx.alpha_power(diff - 1));
  return a > b ? d : scaled(d, f->neg(f->one()));
}

Matrix group_element(const GroupContext& ctx, std::uint64_t a, std::uint64_t b) {
  const CodeParams& p = ctx.params();
  const Matrix d = d_matrix(ctx, a, b);
  return block2x2(scaled(ctx.c_power(a), ctx.alpha_power(b)), d, Matrix(ctx.fqk(), p.t, p.t),
                  scaled(ctx.c_power(b), ctx.alpha_power(a)));
}

Matrix group_product(const GroupContext& ctx, std::uint64_t a, std::uint64_t b) {
  require_exponent(ctx.params(), a, "a");
  require_exponent(ctx.params(), b, "b");
  return power(ctx.h1(), a) * power(ctx.h2(), b);
}

// ---------------------------------------------------------------------------
// Stabilizers and orbits

std::vector<GroupExponents> stabilizer_bruteforce(const GroupContext& ctx, const Line& line) {
  const CodeParams& p = ctx.params();
  if (p.group_order() > kMaxEnumeratedGroup)
    throw Error(Errc::GroupTooLarge, "|H|=" + std::to_string(p.group_order()) + " exceeds enumeration guard");
  if (line.ambient() != p.s) throw Error(Errc::AmbientMismatch, "line ambient differs from s");
  const Field& f = *ctx.fqk();
  std::vector<GroupExponents> out;
  std::vector<Elem> va(line.coords().begin(), line.coords().end());
  for (std::uint64_t a = 1; a <= p.qkt - 1; ++a) {
    va = row_times(f, va, ctx.h1());
    std::vector<Elem> w = va;
    for (std::uint64_t b = 1; b <= p.qkt - 1; ++b) {
      w = row_times(f, w, ctx.h2());
      if (canonical_line(ctx.fqk(), w) == line) out.push_back({a, b});
    }
  }
  return out;
}

LineCode orbit_under_h(const GroupContext& ctx, const Line& line, unsigned workers) {
  const CodeParams& p = ctx.params();
  if (p.group_order() > kMaxEnumeratedGroup)
    throw Error(Errc::GroupTooLarge, "|H|=" + std::to_string(p.group_order()) + " exceeds enumeration guard");
  if (line.ambient() != p.s) throw Error(Errc::AmbientMismatch, "line ambient differs from s");
  const Field& f = *ctx.fqk();
  workers = std::max(1u, workers);
  std::vector<std::vector<Line>> parts(workers);
  parallel_chunks(workers, p.qkt - 1, [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<Line> local;
    std::vector<Elem> va = row_times(f, line.coords(), power(ctx.h1(), begin));
    for (std::size_t a = begin + 1; a <= end; ++a) {
      va = row_times(f, va, ctx.h1());
      std::vector<Elem> vb = va;
      for (std::uint64_t b = 1; b <= p.qkt - 1; ++b) {
        vb = row_times(f, vb, ctx.h2());
        local.push_back(canonical_line(ctx.fqk(), vb));
      }
      // Keep the buffer bounded; orbits are much smaller than |H|.
      if (local.size() > (std::size_t{1} << 16)) {
        auto code = LineCode::from_members(ctx.fqk(), p.s, 1, std::move(local));
        local.assign(code.begin(), code.end());
      }
    }
    parts[w] = std::move(local);
  });
  return lines_from(ctx, std::move(parts));
}

LineCode orbit_under_t(const GroupContext& ctx, const Line& line, unsigned workers) {
  const CodeParams& p = ctx.params();
  if (line.ambient() != p.s) throw Error(Errc::AmbientMismatch, "line ambient differs from s");
  const Field& f = *ctx.fqk();
  const Matrix g = power(ctx.h2(), p.qk - 1);
  workers = std::max(1u, workers);
  std::vector<std::vector<Line>> parts(workers);
  parallel_chunks(workers, p.qkt - 1, [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<Line> local;
    local.reserve((end - begin) * p.r);
    std::vector<Elem> va = row_times(f, line.coords(), power(ctx.h1(), begin));
    for (std::size_t a = begin + 1; a <= end; ++a) {
      va = row_times(f, va, ctx.h1());
      std::vector<Elem> vl = va;
      for (std::uint64_t l = 1; l <= p.r; ++l) {
        vl = row_times(f, vl, g);
        local.push_back(canonical_line(ctx.fqk(), vl));
      }
    }
    parts[w] = std::move(local);
  });
  return lines_from(ctx, std::move(parts));
}

LineCode orbit_code_ci(const GroupContext& ctx, unsigned i, unsigned workers) {
  require_i(ctx.params(), i);
  return orbit_under_t(ctx, unit_line(ctx.fqk(), ctx.params().s, i - 1), workers);
}

std::vector<Matrix> cyclic_subgroup(const Matrix& g, std::uint64_t max_order) {
  std::vector<Matrix> out{g};
  while (!out.back().is_identity()) {
    if (out.size() >= max_order) throw Error(Errc::GroupTooLarge, "cyclic subgroup exceeds the given bound");
    out.push_back(out.back() * g);
  }
  return out;
}

std::vector<Matrix> subgroup_h2(const GroupContext& ctx) {
  return cyclic_subgroup(power(ctx.h2(), ctx.params().qk - 1), ctx.params().qkt);
}

std::vector<Matrix> subgroup_n(const GroupContext& ctx) {
  return cyclic_subgroup(power(ctx.h1() * ctx.h2(), ctx.params().r), ctx.params().qkt);
}

std::vector<Matrix> subgroup_t(const GroupContext& ctx) {
  const CodeParams& p = ctx.params();
  if (p.orbit_size() > kMaxEnumeratedGroup) throw Error(Errc::GroupTooLarge, "|T| exceeds enumeration guard");
  const Matrix g = power(ctx.h2(), p.qk - 1);
  std::vector<Matrix> out;
  out.reserve(p.orbit_size());
  Matrix ha = Matrix::identity(ctx.fqk(), p.s);
  for (std::uint64_t a = 1; a <= p.qkt - 1; ++a) {
    ha = ha * ctx.h1();
    Matrix x = ha;
    for (std::uint64_t l = 1; l <= p.r; ++l) {
      x = x * g;
      out.push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completion

std::vector<std::uint64_t> partition_am(const CodeParams& params, std::uint64_t m) {
  if (m < 1 || m > params.r)
    throw Error(Errc::IndexOutOfRange, "m=" + std::to_string(m) + " outside [1, " + std::to_string(params.r) + "]");
  std::vector<std::uint64_t> out;
  out.reserve(params.qk - 1);
  for (std::uint64_t a = 0; a <= params.qk - 2; ++a) out.push_back(a * params.r + m);
  return out;
}

Matrix search_bm(const GroupContext& ctx, std::uint64_t m) {
  const CodeParams& p = ctx.params();
  std::set<std::vector<Elem>> forbidden;
  for (std::uint64_t a : partition_am(p, m))
    for (std::uint64_t l = 1; l <= p.r; ++l) forbidden.insert(d_matrix_factored(ctx, a, (p.qk - 1) * l).data());

  const FieldPtr& f = ctx.fqk();
  for (std::uint64_t idx = 0; idx < p.qkt; ++idx) {
    Matrix candidate(f, p.t, p.t);
    std::uint64_t rest = idx;
    for (std::size_t j = 0; j < p.t; ++j) {
      const Elem cj{static_cast<std::uint32_t>(rest % p.qk)};
      rest /= p.qk;
      if (cj.v != 0) candidate = candidate + scaled(ctx.mt_power(j), cj);
    }
    if (!forbidden.contains(candidate.data())) return candidate;
  }
  throw Error(Errc::InternalError, "every element of F_{q^k}[M_t] is forbidden for m=" + std::to_string(m));
}

CompletionChoice completion_choice(const GroupContext& ctx, unsigned i, unsigned j) {
  const CodeParams& p = ctx.params();
  require_i(p, i);
  require_j(p, j);
  CompletionChoice choice{i, j, {}};
  choice.b.reserve(p.r);
  for (std::uint64_t m = 1; m <= p.r; ++m) choice.b.push_back(search_bm(ctx, m));
  return choice;
}

LineCode completion_ai(const GroupContext& ctx, const CompletionChoice& choice) {
  const CodeParams& p = ctx.params();
  require_i(p, choice.i);
  if (choice.b.size() != p.r) throw Error(Errc::DimensionMismatch, "need exactly r matrices B_m");
  std::vector<Line> lines;
  lines.reserve(p.r);
  std::vector<Elem> row(p.s);
  for (std::uint64_t m = 1; m <= p.r; ++m) {
    const auto cm = ctx.c_power(m).row(choice.i - 1);
    const auto bm = choice.b[m - 1].row(choice.i - 1);
    std::copy(cm.begin(), cm.end(), row.begin());
    std::copy(bm.begin(), bm.end(), row.begin() + p.t);
    lines.push_back(canonical_line(ctx.fqk(), row));
  }
  return LineCode::from_members(ctx.fqk(), p.s, 1, std::move(lines));
}

LineCode completion_bj(const GroupContext& ctx, unsigned j) {
  const CodeParams& p = ctx.params();
  require_j(p, j);
  const Field& f = *ctx.fqk();
  const Matrix g = power(ctx.h2(), p.qk - 1);
  const Line start = unit_line(ctx.fqk(), p.s, j - 1);
  std::vector<Elem> v(start.coords().begin(), start.coords().end());
  std::vector<Line> lines;
  for (std::uint64_t l = 1; l <= p.r; ++l) {
    v = row_times(f, v, g);
    lines.push_back(canonical_line(ctx.fqk(), v));
  }
  return LineCode::from_members(ctx.fqk(), p.s, 1, std::move(lines));
}

LinePartition assemble_line_partition(const GroupContext& ctx, unsigned i, unsigned j, unsigned workers) {
  CompletionChoice choice = completion_choice(ctx, i, j);
  LineCode c = orbit_code_ci(ctx, i, workers);
  LineCode a = completion_ai(ctx, choice);
  LineCode b = completion_bj(ctx, j);
  return {std::move(c), std::move(a), std::move(b), std::move(choice)};
}

SpreadAssembly assemble_spread(const GroupContext& ctx, const ReductionContext& red, unsigned i, unsigned j,
                               unsigned workers) {
  if (!red.fqk()->same_as(*ctx.fqk())) throw Error(Errc::LevelMismatch, "reduction context from another tower");
  LinePartition lines = assemble_line_partition(ctx, i, j, workers);
  SubspaceCode c_bar = red.reduce_code(lines.c);
  SubspaceCode a_bar = red.reduce_code(lines.a);
  SubspaceCode b_bar = red.reduce_code(lines.b);
  SubspaceCode spread = c_bar.united(a_bar).united(b_bar);
  return {std::move(lines), std::move(c_bar), std::move(a_bar), std::move(b_bar), std::move(spread)};
}

}  // namespace spreadforge
