#include "spreadforge/codecs.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "spreadforge/error.hpp"

namespace spreadforge {

namespace {

constexpr const char* kMagic = "# spreadforge code v";

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(Errc::MalformedHeader, "line " + std::to_string(line) + ": " + what);
}

std::string entries_string(const Field& f, std::span<const Elem> row) {
  std::string out;
  out.reserve(row.size() * f.width() * f.symbols_per_digit());
  for (Elem x : row) out += f.digit_string(x);
  return out;
}

std::string header_text(const CodeHeader& h, std::size_t count) {
  const CodeParams& p = h.params;
  std::ostringstream os;
  os << kMagic << h.version << '\n';
  os << "# params p=" << p.p << " e=" << p.e << " k=" << p.k << " t=" << p.t << '\n';
  os << "# derived q=" << p.q << " s=" << p.s << " n=" << p.n << " r=" << p.r << '\n';
  os << "# tower " << FieldTower::build(p.p, p.e, p.k, p.t).describe() << '\n';
  os << "# kind " << (h.kind == CodeKind::Lines ? "lines" : "subspaces") << '\n';
  os << "# component " << to_string(h.component) << '\n';
  os << "# choice i=" << (h.i ? std::to_string(*h.i) : "-") << " j=" << (h.j ? std::to_string(*h.j) : "-") << '\n';
  os << "# bm " << h.bm_fingerprint << '\n';
  os << "# count " << count << '\n';
  return os.str();
}

template <class Member>
std::string write_members(const Code<Member>& code, const CodeHeader& header) {
  std::string out = header_text(header, code.size());
  for (const auto& m : code) {
    out += member_string(m);
    out += '\n';
  }
  return out;
}

// "key=value key=value" → map.
std::map<std::string, std::string> key_values(const std::string& text, std::size_t line_no) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) malformed(line_no, "expected key=value, got '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    malformed(line_no, "expected an unsigned integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    malformed(line_no, "integer out of range: '" + s + "'");
  }
}

std::optional<unsigned> parse_choice(const std::string& s, std::size_t line_no) {
  if (s == "-") return std::nullopt;
  return static_cast<unsigned>(parse_uint(s, line_no));
}

Elem parse_entry(const Field& f, std::string_view text, std::size_t line_no) {
  const unsigned w = f.symbols_per_digit();
  std::vector<std::uint32_t> ds;
  ds.reserve(f.width());
  for (std::size_t at = 0; at < text.size(); at += w) {
    std::uint32_t d = 0;
    bool ok = true;
    for (char ch : text.substr(at, w)) {
      int v = -1;
      if (ch >= '0' && ch <= '9') v = ch - '0';
      if (w == 1 && ch >= 'a' && ch <= 'z') v = ch - 'a' + 10;
      if (v < 0) ok = false;
      d = d * (w == 1 ? 36 : 10) + static_cast<std::uint32_t>(std::max(v, 0));
    }
    if (!ok || d >= f.characteristic())
      malformed(line_no, "invalid digit '" + std::string(text.substr(at, w)) + "'");
    ds.push_back(d);
  }
  return f.from_digits(ds);
}

std::vector<std::vector<Elem>> parse_member(const Field& f, const std::string& text, std::size_t rows,
                                            std::size_t cols, std::size_t line_no) {
  std::vector<std::vector<Elem>> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(';', start);
    const std::string_view row =
        std::string_view(text).substr(start, end == std::string::npos ? std::string::npos : end - start);
    const std::size_t entry = std::size_t{f.width()} * f.symbols_per_digit();
    if (row.size() != cols * entry)
      malformed(line_no, "row has " + std::to_string(row.size()) + " characters, expected " +
                             std::to_string(cols * entry));
    auto& r = out.emplace_back();
    for (std::size_t c = 0; c < cols; ++c) r.push_back(parse_entry(f, row.substr(c * entry, entry), line_no));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (out.size() != rows)
    malformed(line_no, "member has " + std::to_string(out.size()) + " rows, expected " + std::to_string(rows));
  return out;
}

template <class Member>
Code<Member> check_body(std::vector<Member> members, const std::vector<std::size_t>& lines, FieldPtr field,
                        std::size_t ambient, std::size_t dim) {
  std::set<Member, MemberOrder> seen;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!seen.insert(members[i]).second)
      throw Error(Errc::DuplicateMember, "line " + std::to_string(lines[i]) + ": duplicate member");
  for (std::size_t i = 1; i < members.size(); ++i)
    if (!MemberOrder{}(members[i - 1], members[i]))
      throw Error(Errc::NonCanonicalMember, "line " + std::to_string(lines[i]) + ": member out of canonical order");
  return Code<Member>::from_members(std::move(field), ambient, dim, std::move(members));
}

}  // namespace

const char* to_string(Component c) noexcept {
  switch (c) {
    case Component::Ci: return "Ci";
    case Component::Ai: return "Ai";
    case Component::Bj: return "Bj";
    case Component::Spread: return "spread";
    case Component::Oracle: return "oracle";
    case Component::External: return "external";
  }
  return "external";
}

Component component_from_string(const std::string& s) {
  for (auto c : {Component::Ci, Component::Ai, Component::Bj, Component::Spread, Component::Oracle,
                 Component::External})
    if (s == to_string(c)) return c;
  throw Error(Errc::MalformedHeader, "unknown component '" + s + "'");
}

std::string bm_fingerprint(const CompletionChoice& choice) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](char ch) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  };
  for (const auto& b : choice.b) {
    for (char ch : entries_string(*b.field(), b.data())) feed(ch);
    feed('|');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<NamedText> assembly_files(const CodeParams& params, const SpreadAssembly& assembly) {
  const unsigned i = assembly.lines.choice.i, j = assembly.lines.choice.j;
  const std::string is = std::to_string(i), js = std::to_string(j);
  struct Part {
    Component component;
    const SubspaceCode* code;
    std::string name;
  };
  const Part parts[] = {{Component::Ci, &assembly.c_bar, "C" + is + ".code"},
                        {Component::Ai, &assembly.a_bar, "A" + is + ".code"},
                        {Component::Bj, &assembly.b_bar, "B" + js + ".code"},
                        {Component::Spread, &assembly.spread, "spread.code"}};
  std::vector<NamedText> out;
  for (const auto& part : parts) {
    CodeHeader h;
    h.params = params;
    h.kind = CodeKind::Subspaces;
    h.component = part.component;
    if (part.component != Component::Bj) h.i = i;
    if (part.component != Component::Ci) h.j = j;
    if (part.component == Component::Ai || part.component == Component::Spread)
      h.bm_fingerprint = bm_fingerprint(assembly.lines.choice);
    out.push_back({part.name, write_code(*part.code, h)});
  }
  return out;
}

std::string member_string(const Line& line) { return entries_string(*line.field(), line.coords()); }

std::string member_string(const Subspace& subspace) {
  const Matrix& b = subspace.basis();
  std::string out;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    if (r) out += ';';
    out += entries_string(*b.field(), b.row(r));
  }
  return out;
}

std::string write_code(const LineCode& code, const CodeHeader& header) {
  if (header.kind != CodeKind::Lines) throw Error(Errc::KindMismatch, "header declares subspaces for a line code");
  return write_members(code, header);
}

std::string write_code(const SubspaceCode& code, const CodeHeader& header) {
  if (header.kind != CodeKind::Subspaces) throw Error(Errc::KindMismatch, "header declares lines for a subspace code");
  return write_members(code, header);
}

std::size_t CodeFile::size() const {
  return std::visit([](const auto& c) { return c.size(); }, code);
}

CodeFile read_code(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next() || line.rfind(kMagic, 0) != 0) malformed(1, "missing format banner");
  CodeHeader h;
  {
    const std::string v = line.substr(std::string(kMagic).size());
    h.version = static_cast<int>(parse_uint(v, line_no));
    if (h.version != kCodeFormatVersion)
      throw Error(Errc::VersionUnsupported, "format version " + v + " (supported: " +
                                                std::to_string(kCodeFormatVersion) + ")");
  }

  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::uint64_t count = 0;
  while (true) {
    if (!next()) malformed(line_no + 1, "header ends before '# count'");
    if (line.rfind("# ", 0) != 0) malformed(line_no, "expected a header line");
    const auto sp = line.find(' ', 2);
    const std::string key = line.substr(2, sp == std::string::npos ? std::string::npos : sp - 2);
    const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (key == "count") {
      count = parse_uint(value, line_no);
      break;
    }
    fields[key] = {value, line_no};
  }
  for (const char* key : {"params", "derived", "tower", "kind", "component", "choice", "bm"})
    if (!fields.contains(key)) malformed(line_no, std::string("missing header '") + key + "'");

  auto [params_text, params_line] = fields["params"];
  auto kv = key_values(params_text, params_line);
  for (const char* key : {"p", "e", "k", "t"})
    if (!kv.contains(key)) malformed(params_line, std::string("params missing ") + key);
  h.params = validate_params(static_cast<std::uint32_t>(parse_uint(kv["p"], params_line)),
                             static_cast<unsigned>(parse_uint(kv["e"], params_line)),
                             static_cast<unsigned>(parse_uint(kv["k"], params_line)),
                             static_cast<unsigned>(parse_uint(kv["t"], params_line)));

  auto [derived_text, derived_line] = fields["derived"];
  auto dv = key_values(derived_text, derived_line);
  if (parse_uint(dv["q"], derived_line) != h.params.q || parse_uint(dv["s"], derived_line) != h.params.s ||
      parse_uint(dv["n"], derived_line) != h.params.n || parse_uint(dv["r"], derived_line) != h.params.r)
    malformed(derived_line, "derived quantities disagree with params");

  const FieldTower tower = FieldTower::build(h.params.p, h.params.e, h.params.k, h.params.t);
  if (fields["tower"].first != tower.describe())
    malformed(fields["tower"].second, "tower descriptor differs from the canonical one");

  const std::string& kind = fields["kind"].first;
  if (kind == "lines")
    h.kind = CodeKind::Lines;
  else if (kind == "subspaces")
    h.kind = CodeKind::Subspaces;
  else
    malformed(fields["kind"].second, "unknown kind '" + kind + "'");

  try {
    h.component = component_from_string(fields["component"].first);
  } catch (const Error&) {
    malformed(fields["component"].second, "unknown component '" + fields["component"].first + "'");
  }
  auto cv = key_values(fields["choice"].first, fields["choice"].second);
  h.i = parse_choice(cv["i"], fields["choice"].second);
  h.j = parse_choice(cv["j"], fields["choice"].second);
  h.bm_fingerprint = fields["bm"].first;

  const bool lines = h.kind == CodeKind::Lines;
  const FieldPtr field = lines ? tower.fqk() : tower.fq();
  const std::size_t ambient = lines ? h.params.s : h.params.n;
  const std::size_t dim = lines ? 1 : h.params.k;

  std::vector<Line> line_members;
  std::vector<Subspace> subspace_members;
  std::vector<std::size_t> member_lines;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (!next()) malformed(line_no + 1, "truncated body: expected " + std::to_string(count) + " members, found " +
                                            std::to_string(idx));
    const auto rows = parse_member(*field, line, dim, ambient, line_no);
    const Matrix m = Matrix::from_rows(field, rows);
    member_lines.push_back(line_no);
    if (lines) {
      const Line l = canonical_line(field, m.row(0));
      if (!std::equal(l.coords().begin(), l.coords().end(), m.row(0).begin()))
        throw Error(Errc::NonCanonicalMember, "line " + std::to_string(line_no) + ": generator not normalized");
      line_members.push_back(l);
    } else {
      const auto reduced = rref(m);
      if (reduced.rank != dim || !(reduced.form == m))
        throw Error(Errc::NonCanonicalMember, "line " + std::to_string(line_no) + ": basis not in reduced form");
      subspace_members.push_back(canonical_subspace(m));
    }
  }
  while (next())
    if (!line.empty()) malformed(line_no, "content after the declared member count");

  if (lines) return {h, check_body(std::move(line_members), member_lines, field, ambient, dim)};
  return {h, check_body(std::move(subspace_members), member_lines, field, ambient, dim)};
}

CodeFile read_code_string(const std::string& text) {
  std::istringstream is(text);
  return read_code(is);
}

std::string report_to_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << "cardinality=" << rep.cardinality << '\n'
     << "constant_dimension=" << (rep.constant_dimension ? "true" : "false") << '\n'
     << "dimension=" << rep.dimension << '\n'
     << "ambient=" << rep.ambient << '\n'
     << "field_size=" << rep.field_size << '\n'
     << "pairwise_checked=" << (rep.pairwise_checked ? "true" : "false") << '\n'
     << "min_distance=" << rep.min_distance << '\n'
     << "pairwise_trivial=" << (rep.pairwise_trivial ? "true" : "false") << '\n'
     << "coverage_checked=" << (rep.coverage_checked ? "true" : "false") << '\n'
     << "coverage=" << rep.coverage << '\n'
     << "collisions=" << rep.collisions << '\n'
     << "spread_bound=" << rep.spread_bound << '\n'
     << "partial_spread_bound=" << rep.partial_spread_bound << '\n'
     << "verdict=" << to_string(rep.verdict) << '\n';
  return os.str();
}

std::string report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["cardinality"] = rep.cardinality;
  j["constant_dimension"] = rep.constant_dimension;
  j["dimension"] = rep.dimension;
  j["ambient"] = rep.ambient;
  j["field_size"] = rep.field_size;
  j["pairwise_checked"] = rep.pairwise_checked;
  j["min_distance"] = rep.min_distance;
  j["pairwise_trivial"] = rep.pairwise_trivial;
  j["coverage_checked"] = rep.coverage_checked;
  j["coverage"] = rep.coverage;
  j["collisions"] = rep.collisions;
  j["spread_bound"] = rep.spread_bound;
  j["partial_spread_bound"] = rep.partial_spread_bound;
  j["verdict"] = to_string(rep.verdict);
  return j.dump(2);
}

VerificationReport report_from_json(const std::string& text) {
  VerificationReport rep;
  try {
    const auto j = nlohmann::json::parse(text);
    rep.cardinality = j.at("cardinality").get<std::uint64_t>();
    rep.constant_dimension = j.at("constant_dimension").get<bool>();
    rep.dimension = j.at("dimension").get<std::size_t>();
    rep.ambient = j.at("ambient").get<std::size_t>();
    rep.field_size = j.at("field_size").get<std::uint64_t>();
    rep.pairwise_checked = j.at("pairwise_checked").get<bool>();
    rep.min_distance = j.at("min_distance").get<std::size_t>();
    rep.pairwise_trivial = j.at("pairwise_trivial").get<bool>();
    rep.coverage_checked = j.at("coverage_checked").get<bool>();
    rep.coverage = j.at("coverage").get<std::uint64_t>();
    rep.collisions = j.at("collisions").get<std::uint64_t>();
    rep.spread_bound = j.at("spread_bound").get<std::uint64_t>();
    rep.partial_spread_bound = j.at("partial_spread_bound").get<std::uint64_t>();
    rep.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedHeader, std::string("report document: ") + e.what());
  }
  return rep;
}

}  // namespace spreadforge
