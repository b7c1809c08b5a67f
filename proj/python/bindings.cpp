// Python bindings: codes cross the boundary as text in the on-disk format,
// reports as JSON strings that the package wrapper decodes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "spreadforge/codecs.hpp"
#include "spreadforge/construction.hpp"
#include "spreadforge/error.hpp"
#include "spreadforge/verify.hpp"

namespace py = pybind11;
using namespace spreadforge;

namespace {

std::vector<Subspace> members_of(const CodeFile& file) {
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

py::dict params_dict(const CodeParams& p) {
  py::dict d;
  d["p"] = p.p;
  d["e"] = p.e;
  d["k"] = p.k;
  d["t"] = p.t;
  d["q"] = p.q;
  d["s"] = p.s;
  d["n"] = p.n;
  d["r"] = p.r;
  d["spread_size"] = p.spread_size();
  d["orbit_size"] = p.orbit_size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_spreadforge, m) {
  m.doc() = "Spreads from Abelian non-cyclic orbit codes";

  // The message starts with the error code name, e.g. "GcdConditionViolated: ...".
  py::register_exception<Error>(m, "SpreadforgeError", PyExc_ValueError);

  m.def(
      "validate_params",
      [](std::uint32_t p, unsigned e, unsigned k, unsigned t) { return params_dict(validate_params(p, e, k, t)); },
      py::arg("p"), py::arg("e"), py::arg("k"), py::arg("t"));

  m.def(
      "construct",
      [](std::uint32_t p, unsigned e, unsigned k, unsigned t, unsigned i, unsigned j, unsigned workers) {
        const CodeParams cp = validate_params(p, e, k, t);
        if (j == 0) j = cp.t + 1;
        std::map<std::string, std::string> out;
        {
          py::gil_scoped_release release;
          const GroupContext ctx = build_group(cp);
          const ReductionContext red(ctx.tower());
          const SpreadAssembly assembly = assemble_spread(ctx, red, i, j, workers);
          for (auto& file : assembly_files(cp, assembly)) out.emplace(file.name, std::move(file.text));
        }
        return out;
      },
      py::arg("p"), py::arg("e"), py::arg("k"), py::arg("t"), py::arg("i") = 1, py::arg("j") = 0,
      py::arg("workers") = 1, "File name to file text for C_i, A_i, B_j and the spread.");

  m.def(
      "oracle",
      [](std::uint32_t p, unsigned e, unsigned k, unsigned t) {
        const CodeParams cp = validate_params(p, e, k, t);
        CodeHeader h;
        h.params = cp;
        h.component = Component::Oracle;
        return write_code(desarguesian_oracle(FieldTower::build(p, e, k, t), cp), h);
      },
      py::arg("p"), py::arg("e"), py::arg("k"), py::arg("t"));

  m.def(
      "classify_json",
      [](const std::string& text, unsigned workers) {
        const CodeFile file = read_code_string(text);
        py::gil_scoped_release release;
        return report_to_json(classify(members_of(file), workers));
      },
      py::arg("text"), py::arg("workers") = 1);

  m.def(
      "codes_equal",
      [](const std::string& a, const std::string& b) {
        const CodeFile fa = read_code_string(a), fb = read_code_string(b);
        if (fa.code.index() != fb.code.index() || fa.header.params != fb.header.params) return false;
        return std::visit(
            [&fb](const auto& x) { return codes_equal(x, std::get<std::decay_t<decltype(x)>>(fb.code)); }, fa.code);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "header",
      [](const std::string& text) {
        const CodeHeader h = read_code_string(text).header;
        py::dict d;
        d["params"] = params_dict(h.params);
        d["kind"] = h.kind == CodeKind::Lines ? "lines" : "subspaces";
        d["component"] = to_string(h.component);
        d["i"] = h.i ? py::object(py::int_(*h.i)) : py::object(py::none());
        d["j"] = h.j ? py::object(py::int_(*h.j)) : py::object(py::none());
        d["bm"] = h.bm_fingerprint;
        return d;
      },
      py::arg("text"));
}
