#pragma once

// Line-oriented text format for codes, plus report serialization.
//
//   # spreadforge code v1
//   # params p=2 e=1 k=2 t=2
//   # derived q=2 s=4 n=8 r=5
//   # tower p=2; step=1:1,1; step=2:1,1,1; step=2:...
//   # kind subspaces
//   # component spread
//   # choice i=1 j=3
//   # bm 9f0c3a1e5d2b7c44
//   # count 85
//   10000000;01000000
//   ...
//
// One member per line. A member is its canonical basis, rows joined by ';';
// a row is the concatenation of its entries, each entry the little-endian
// base-p digit string of the element (e digits over F_q, ek digits over
// F_{q^k}). A digit is one character 0-9a-z for p ≤ 36 and a zero-padded
// decimal number otherwise. Members are sorted by the lexicographic order of
// these strings.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spreadforge/construction.hpp"
#include "spreadforge/subspaces.hpp"
#include "spreadforge/verify.hpp"

namespace spreadforge {

inline constexpr int kCodeFormatVersion = 1;

enum class Component { Ci, Ai, Bj, Spread, Oracle, External };

const char* to_string(Component c) noexcept;
Component component_from_string(const std::string& s);

struct CodeHeader {
  int version = kCodeFormatVersion;
  CodeParams params;
  CodeKind kind = CodeKind::Subspaces;
  Component component = Component::External;
  std::optional<unsigned> i;
  std::optional<unsigned> j;
  /// Hex digest of the B_m matrices, "-" when none were involved.
  std::string bm_fingerprint = "-";

  friend bool operator==(const CodeHeader&, const CodeHeader&) = default;
};

/// 64-bit FNV-1a over the digit strings of B_1, …, B_r, in hex.
std::string bm_fingerprint(const CompletionChoice& choice);

std::string write_code(const LineCode& code, const CodeHeader& header);
std::string write_code(const SubspaceCode& code, const CodeHeader& header);

struct CodeFile {
  CodeHeader header;
  std::variant<LineCode, SubspaceCode> code;

  std::size_t size() const;
};

/// Throws MalformedHeader (with line numbers), VersionUnsupported,
/// NonCanonicalMember, DuplicateMember.
CodeFile read_code(std::istream& in);
CodeFile read_code_string(const std::string& text);

/// Member text exactly as written in the body.
std::string member_string(const Line& line);
std::string member_string(const Subspace& subspace);

struct NamedText {
  std::string name;  // "C1.code", "A1.code", "B3.code", "spread.code"
  std::string text;
};

/// The four files written by a construction, with component headers filled in.
std::vector<NamedText> assembly_files(const CodeParams& params, const SpreadAssembly& assembly);

std::string report_to_text(const VerificationReport& rep);
std::string report_to_json(const VerificationReport& rep);
VerificationReport report_from_json(const std::string& json);

}  // namespace spreadforge
