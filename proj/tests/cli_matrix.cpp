// Drives the command-line tool over every valid parameter set with
// q^{kt} ≤ 2^12 and every (i, j) choice: construct, verify each written
// file, and compare the spread against the oracle. Parameter sets whose
// spread exceeds kMaxSpread members are skipped and listed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "spreadforge/construction.hpp"
#include "spreadforge/error.hpp"

#ifndef SPREADFORGE_CLI_PATH
#define SPREADFORGE_CLI_PATH "spreadforge"
#endif

using namespace spreadforge;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBound = 1u << 12;
constexpr std::uint64_t kMaxSpread = 1u << 16;

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + SPREADFORGE_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<CodeParams> valid_params() {
  std::vector<CodeParams> out;
  for (std::uint64_t p = 2; p <= kBound; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned e = 1; checked_pow(p, e) <= kBound; ++e)
      for (unsigned k = 1; checked_pow(p, std::uint64_t{e} * k) <= kBound; ++k)
        for (unsigned t = 1; checked_pow(p, std::uint64_t{e} * k * t) <= kBound; ++t) {
          try {
            out.push_back(validate_params(static_cast<std::uint32_t>(p), e, k, t));
          } catch (const Error& err) {
            if (err.code() != Errc::GcdConditionViolated && err.code() != Errc::ParameterOutOfRange) throw;
          }
        }
  }
  return out;
}

}  // namespace

int main() {
  std::cout << std::unitbuf;
  const fs::path dir = fs::temp_directory_path() / ("spreadforge-matrix-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t runs = 0, failures = 0;
  std::vector<std::string> skipped;
  for (const CodeParams& p : valid_params()) {
    const std::string flags = "--p " + std::to_string(p.p) + " --e " + std::to_string(p.e) + " --k " +
                              std::to_string(p.k) + " --t " + std::to_string(p.t);
    if (p.spread_size() > kMaxSpread) {
      skipped.push_back(flags);
      continue;
    }
    const fs::path oracle = dir / "oracle.code";
    if (run("oracle " + flags + " --out \"" + oracle.string() + "\"") != 0) {
      std::cout << "FAIL oracle " << flags << "\n";
      ++failures;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    for (unsigned i = 1; i <= p.t; ++i)
      for (unsigned j = p.t + 1; j <= p.s; ++j) {
        ++runs;
        const std::string tag = flags + " --i " + std::to_string(i) + " --j " + std::to_string(j);
        const fs::path out = dir / "run";
        fs::remove_all(out);
        std::string step = "construct";
        bool ok = run("construct " + tag + " --out \"" + out.string() + "\"") == 0;
        for (const std::string name : {"C" + std::to_string(i), "A" + std::to_string(i), "B" + std::to_string(j),
                                       std::string("spread")}) {
          if (!ok) break;
          step = "verify " + name;
          ok = run("verify --in \"" + (out / (name + ".code")).string() + "\"") == 0;
        }
        if (ok) {
          step = "compare";
          ok = run("compare \"" + (out / "spread.code").string() + "\" \"" + oracle.string() + "\"") == 0;
        }
        if (!ok) {
          std::cout << "FAIL " << step << " " << tag << "\n";
          ++failures;
        }
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 2) std::cout << "slow (" << secs << " s): " << flags << "\n";
  }
  fs::remove_all(dir);
  for (const auto& s : skipped) std::cout << "skipped (spread larger than " << kMaxSpread << "): " << s << "\n";
  std::cout << runs << " choices, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}
