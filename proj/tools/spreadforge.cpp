// spreadforge: construct, verify, and compare spread codes from the command
// line.
//
// Exit status: 0 success, 1 codes differ, 2 bad flags or singleton distance
// input, 3 gcd(t, q^k−1) ≠ 1, 4 I/O or parse failure, 5 verification failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spreadforge/codecs.hpp"
#include "spreadforge/construction.hpp"
#include "spreadforge/error.hpp"
#include "spreadforge/parallel.hpp"
#include "spreadforge/reduction.hpp"
#include "spreadforge/verify.hpp"

namespace fs = std::filesystem;
using namespace spreadforge;

namespace {

enum Exit : int { kOk = 0, kDiffer = 1, kUsage = 2, kGcd = 3, kIo = 4, kVerify = 5 };

// Raised for failures that map directly to an exit status.
struct ExitError {
  int code;
  std::string message;
};

struct Config {
  std::uint32_t p = 2;
  unsigned e = 1, k = 1, t = 1;
  unsigned i = 0, j = 0;  // 0: default
  std::string in, out;
  std::vector<std::string> files;
  std::uint64_t bound = 16;
  std::uint64_t max_order = kMaxEnumeratedGroup;
  unsigned workers = 0;
  bool orbit = false;
  bool json = false;
  bool verbose = false;
};

int exit_for(Errc code) {
  switch (code) {
    case Errc::GcdConditionViolated: return kGcd;
    case Errc::NonPrimeCharacteristic:
    case Errc::ParameterOutOfRange:
    case Errc::IndexOutOfRange:
    case Errc::ExponentOutOfRange:
    case Errc::GroupTooLarge: return kUsage;
    case Errc::MalformedHeader:
    case Errc::VersionUnsupported:
    case Errc::NonCanonicalMember:
    case Errc::DuplicateMember: return kIo;
    default: return kVerify;
  }
}

class Timer {
 public:
  Timer(bool on, std::string what) : on_(on), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (!on_) return;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::cerr << "[" << what_ << ": " << secs << " s]\n";
  }

 private:
  bool on_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

CodeFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError{kIo, "cannot open '" + path + "'"};
  try {
    return read_code(in);
  } catch (const Error& e) {
    throw ExitError{kIo, path + ": " + e.what()};
  }
}

void save(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw ExitError{kIo, "cannot write '" + path.string() + "'"};
}

std::vector<Subspace> as_subspaces(const CodeFile& file) {
  std::vector<Subspace> out;
  std::visit(
      [&out](const auto& code) {
        for (const auto& m : code) {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Line>)
            out.push_back(canonical_subspace(m.basis()));
          else
            out.push_back(m);
        }
      },
      file.code);
  return out;
}

CodeParams params_from(const Config& cfg) { return validate_params(cfg.p, cfg.e, cfg.k, cfg.t); }

void check_choice(const CodeParams& p, unsigned i, unsigned j) {
  if (i < 1 || i > p.t)
    throw ExitError{kUsage, "--i " + std::to_string(i) + " out of range; valid: 1.." + std::to_string(p.t)};
  if (j < p.t + 1 || j > p.s)
    throw ExitError{kUsage, "--j " + std::to_string(j) + " out of range; valid: " + std::to_string(p.t + 1) + ".." +
                                std::to_string(p.s)};
}

// ---------------------------------------------------------------------------

int cmd_params(const Config& cfg) {
  std::cout << "p e k t q n s r orbit spread\n";
  for (std::uint64_t p = 2; p <= cfg.bound; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned e = 1; checked_pow(p, e) <= cfg.bound; ++e)
      for (unsigned k = 1; checked_pow(p, std::uint64_t{e} * k) <= cfg.bound; ++k)
        for (unsigned t = 1; checked_pow(p, std::uint64_t{e} * k * t) <= cfg.bound; ++t) {
          CodeParams cp;
          try {
            cp = validate_params(static_cast<std::uint32_t>(p), e, k, t);
          } catch (const Error& err) {
            if (err.code() == Errc::GcdConditionViolated || err.code() == Errc::ParameterOutOfRange) continue;
            throw;
          }
          std::cout << cp.p << ' ' << cp.e << ' ' << cp.k << ' ' << cp.t << ' ' << cp.q << ' ' << cp.n << ' '
                    << cp.s << ' ' << cp.r << ' ' << cp.orbit_size() << ' ' << cp.spread_size() << '\n';
        }
  }
  return kOk;
}

int cmd_construct(const Config& cfg) {
  const CodeParams p = params_from(cfg);
  const unsigned i = cfg.i ? cfg.i : 1;
  const unsigned j = cfg.j ? cfg.j : p.t + 1;
  check_choice(p, i, j);
  const unsigned workers = resolve_workers(cfg.workers);

  const GroupContext ctx = [&] {
    Timer timer(cfg.verbose, "build group");
    return build_group(p);
  }();
  const ReductionContext red(ctx.tower());
  const SpreadAssembly assembly = [&] {
    Timer timer(cfg.verbose, "assemble spread");
    return assemble_spread(ctx, red, i, j, workers);
  }();

  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw ExitError{kIo, "cannot create '" + cfg.out + "': " + ec.message()};

  for (const auto& file : assembly_files(p, assembly)) save(fs::path(cfg.out) / file.name, file.text);

  const VerificationReport rep = [&] {
    Timer timer(cfg.verbose, "classify");
    return classify(assembly.spread, workers);
  }();
  std::cout << "params p=" << p.p << " e=" << p.e << " k=" << p.k << " t=" << p.t << " (q=" << p.q
            << " n=" << p.n << " s=" << p.s << " r=" << p.r << ")\n"
            << "choice i=" << i << " j=" << j << "\n"
            << "C" << i << "=" << assembly.c_bar.size() << " A" << i << "=" << assembly.a_bar.size() << " B" << j
            << "=" << assembly.b_bar.size() << " spread=" << assembly.spread.size() << "\n"
            << "min_distance=" << rep.min_distance << " verdict=" << to_string(rep.verdict) << "\n"
            << "written to " << cfg.out << "\n";
  return rep.verdict == Verdict::Spread ? kOk : kVerify;
}

bool verdict_expected(const CodeFile& file, const VerificationReport& rep) {
  switch (file.header.component) {
    case Component::Spread:
    case Component::Oracle: return rep.verdict == Verdict::Spread;
    case Component::Ci:
    case Component::Ai:
    case Component::Bj:
      // A single member is trivially a partial spread.
      return rep.verdict == Verdict::PartialSpread || (rep.cardinality == 1 && rep.pairwise_trivial);
    case Component::External: return true;
  }
  return false;
}

int cmd_verify(const Config& cfg) {
  const CodeFile file = load(cfg.in);
  const VerificationReport rep = classify(as_subspaces(file), resolve_workers(cfg.workers));
  std::cout << (cfg.json ? report_to_json(rep) + "\n" : report_to_text(rep));
  const bool ok = verdict_expected(file, rep);
  if (!ok)
    std::cerr << "verification failed: component " << to_string(file.header.component) << " but verdict "
              << to_string(rep.verdict) << "\n";
  return ok ? kOk : kVerify;
}

int cmd_oracle(const Config& cfg) {
  const CodeParams p = params_from(cfg);
  const FieldTower tower = FieldTower::build(p.p, p.e, p.k, p.t);
  CodeHeader h;
  h.params = p;
  h.kind = CodeKind::Subspaces;
  h.component = Component::Oracle;
  const SubspaceCode code = desarguesian_oracle(tower, p);
  save(cfg.out, write_code(code, h));
  std::cout << "oracle members=" << code.size() << " written to " << cfg.out << "\n";
  return kOk;
}

template <class Member>
int compare_codes(const Code<Member>& a, const Code<Member>& b, const std::string& name_a,
                  const std::string& name_b) {
  try {
    if (codes_equal(a, b)) {
      std::cout << "equal members=" << a.size() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cout << "not equal: " << e.what() << "\n";
    return kDiffer;
  }
  const auto only_a = a.minus(b), only_b = b.minus(a);
  std::cout << "not equal: " << only_a.size() << " only in " << name_a << ", " << only_b.size() << " only in "
            << name_b << "\n";
  constexpr std::size_t kSample = 10;
  for (std::size_t n = 0; n < std::min(kSample, only_a.size()); ++n)
    std::cout << "- " << member_string(only_a[n]) << "\n";
  for (std::size_t n = 0; n < std::min(kSample, only_b.size()); ++n)
    std::cout << "+ " << member_string(only_b[n]) << "\n";
  return kDiffer;
}

int cmd_compare(const Config& cfg) {
  if (cfg.files.size() != 2) throw ExitError{kUsage, "compare needs exactly two files"};
  const CodeFile a = load(cfg.files[0]), b = load(cfg.files[1]);
  if (a.code.index() != b.code.index()) {
    std::cout << "not equal: one file holds lines, the other subspaces\n";
    return kDiffer;
  }
  if (a.header.params != b.header.params) {
    std::cout << "not equal: parameters differ\n";
    return kDiffer;
  }
  if (const auto* la = std::get_if<LineCode>(&a.code))
    return compare_codes(*la, std::get<LineCode>(b.code), cfg.files[0], cfg.files[1]);
  return compare_codes(std::get<SubspaceCode>(a.code), std::get<SubspaceCode>(b.code), cfg.files[0], cfg.files[1]);
}

int cmd_distance(const Config& cfg) {
  const CodeFile file = load(cfg.in);
  const unsigned workers = resolve_workers(cfg.workers);
  const MinDistance md =
      std::visit([workers](const auto& code) { return min_distance_bruteforce(code, workers); }, file.code);
  if (md.singleton) {
    std::cout << "d=0 (a code with at most one member has distance 0 by convention)\n";
    return kUsage;
  }
  std::cout << "bruteforce=" << md.value << "\n";
  if (!cfg.orbit) return kOk;

  const CodeHeader& h = file.header;
  if (h.component != Component::Ci || !h.i)
    throw ExitError{kUsage, "--orbit needs a Ci file (orbit of a standard line)"};
  if (h.params.group_order() > cfg.max_order)
    throw ExitError{kUsage, "|H|=" + std::to_string(h.params.group_order()) + " exceeds --max-order " +
                                std::to_string(cfg.max_order)};
  const GroupContext ctx = build_group(h.params);
  const Line generator = unit_line(ctx.fqk(), h.params.s, *h.i - 1);
  const auto stab = stabilizer_bruteforce(ctx, generator);
  std::size_t orbit = 0;
  if (std::holds_alternative<LineCode>(file.code)) {
    orbit = min_distance_orbit(ctx, generator, stab);
  } else {
    const ReductionContext red(ctx.tower());
    orbit = min_distance_orbit(ctx, red, generator, stab);
  }
  const bool agree = orbit == md.value;
  std::cout << "orbit=" << orbit << " agree=" << (agree ? "true" : "false") << "\n";
  return agree ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spread codes as orbits of an Abelian non-cyclic matrix group"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--workers", cfg.workers, "Worker threads (default: SPREADFORGE_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", cfg.verbose, "Report timings on stderr");

  auto add_params = [&cfg](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Characteristic")->required()->check(CLI::PositiveNumber);
    sub->add_option("--e", cfg.e, "q = p^e")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.k, "Subspace dimension")->required()->check(CLI::PositiveNumber);
    sub->add_option("--t", cfg.t, "s = 2t")->required()->check(CLI::PositiveNumber);
  };

  auto* params = app.add_subcommand("params", "List valid parameter sets with q^{kt} <= bound");
  params->add_option("--bound", cfg.bound, "Upper bound on q^{kt}")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Build C_i, A_i, B_j and the spread, reduced over F_q");
  add_params(construct);
  construct->add_option("--i", cfg.i, "Orbit index in 1..t (default 1)");
  construct->add_option("--j", cfg.j, "Completion index in t+1..2t (default t+1)");
  construct->add_option("--out", cfg.out, "Output directory")->required();

  auto* verify = app.add_subcommand("verify", "Classify a code file");
  verify->add_option("--in", cfg.in, "Code file")->required();
  verify->add_flag("--json", cfg.json, "Emit the report as JSON");

  auto* oracle = app.add_subcommand("oracle", "Write the Desarguesian spread");
  add_params(oracle);
  oracle->add_option("--out", cfg.out, "Output file")->required();

  auto* compare = app.add_subcommand("compare", "Compare two code files as sets");
  compare->add_option("files", cfg.files, "Two code files")->required()->expected(2);

  auto* distance = app.add_subcommand("distance", "Minimum subspace distance of a code file");
  distance->add_option("--in", cfg.in, "Code file")->required();
  distance->add_flag("--orbit", cfg.orbit, "Also evaluate the orbit formula (Ci files)");
  distance->add_option("--max-order", cfg.max_order, "Largest |H| enumerated by --orbit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*params) return cmd_params(cfg);
    if (*construct) return cmd_construct(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*distance) return cmd_distance(cfg);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerify;
  }
  return kUsage;
}
