#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arlink/arithmetic.hpp"
#include "arlink/cli.hpp"
#include "arlink/error.hpp"
#include "arlink/group_word.hpp"
#include "arlink/magnus.hpp"
#include "arlink/unitriangular.hpp"

namespace py = pybind11;

namespace {

std::vector<std::vector<std::uint64_t>> rows(const arlink::PartialMatrix& m) {
  const auto d = static_cast<std::size_t>(m.n() + 1);
  std::vector<std::vector<std::uint64_t>> out(d, std::vector<std::uint64_t>(d, 0));
  for (const auto& [k, l] : m.shape().entries()) {
    out[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)] = m.at(k, l);
  }
  return out;
}

py::tuple report(const arlink::Report& r) { return py::make_tuple(r.exit_code(), r.render_json()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the arlink C++ library.";

  auto input_error = py::register_exception<arlink::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<arlink::CompatibilityError>(m, "CompatibilityError", input_error.ptr());
  py::register_exception<arlink::PreconditionError>(m, "PreconditionError", input_error.ptr());
  py::register_exception<arlink::ParseError>(m, "ParseError", input_error.ptr());
  py::register_exception<arlink::ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<arlink::ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("legendre", &arlink::legendre, py::arg("a"), py::arg("p"));
  m.def("mu_linking_number", &arlink::mu_linking_number, py::arg("p_i"), py::arg("p_j"));
  m.def("ramifies_in_quadratic", &arlink::ramifies_in_quadratic, py::arg("p"), py::arg("d"));
  m.def("ordering_extends_to_quadratic", &arlink::ordering_extends_to_quadratic, py::arg("d"));
  m.def("single_globalization_exists", &arlink::single_globalization_exists, py::arg("p"));
  m.def("linking_invariant_n1", &arlink::linking_invariant_n1, py::arg("p1"), py::arg("pj"));
  m.def("linking_invariant_n2", &arlink::linking_invariant_n2, py::arg("p1"), py::arg("p2"),
        py::arg("pj"));
  m.def("class_number_gate", &arlink::class_number_gate);
  m.def(
      "redei_solve_conic",
      [](std::uint64_t p1, std::uint64_t p2) {
        auto s = arlink::redei_solve_conic(p1, p2);
        return py::make_tuple(s.x, s.y, s.z);
      },
      py::arg("p1"), py::arg("p2"));
  m.def(
      "redei_symbol",
      [](std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
        auto r = arlink::redei_symbol(p1, p2, p3);
        py::dict witnesses;
        for (const auto& [k, v] : r.witnesses) witnesses[py::str(k)] = v;
        return py::make_tuple(r.value, witnesses);
      },
      py::arg("p1"), py::arg("p2"), py::arg("p3"));

  m.def(
      "normalize_word", [](const std::string& w) { return arlink::parse_group_word(w).to_string(); },
      py::arg("word"));
  m.def(
      "eps",
      [](const std::string& word, const std::vector<std::string>& index, std::uint64_t q) {
        return arlink::eps(arlink::parse_group_word(word), index, arlink::ResidueRing(q));
      },
      py::arg("word"), py::arg("index"), py::arg("q"));
  m.def(
      "magnus_matrix",
      [](const std::string& word, const std::vector<std::string>& index, std::uint64_t q) {
        return rows(arlink::magnus_matrix(arlink::parse_group_word(word), index, arlink::ResidueRing(q)));
      },
      py::arg("word"), py::arg("index"), py::arg("q"));

  m.def(
      "cmd_symbol",
      [](const std::string& kind, const std::vector<std::string>& args) {
        return report(arlink::cmd_symbol(kind, args));
      },
      py::arg("kind"), py::arg("arguments"));
  m.def(
      "cmd_solve_text",
      [](const std::string& text, bool lift) { return report(arlink::cmd_solve_text(text, lift)); },
      py::arg("text"), py::arg("lift") = false);
  m.def(
      "cmd_magnus",
      [](const std::string& word, const std::string& index, std::uint64_t q) {
        return report(arlink::cmd_magnus(word, index, q));
      },
      py::arg("word"), py::arg("index"), py::arg("q"));
  m.def(
      "cmd_verify",
      [](const std::string& suite, std::uint64_t max, int n, std::uint64_t q, int samples,
         int fixtures, std::uint64_t seed) {
        return report(arlink::cmd_verify(suite, {max, n, q, samples, fixtures, seed}));
      },
      py::arg("suite"), py::arg("max") = 200, py::arg("n") = 2, py::arg("q") = 2,
      py::arg("samples") = 100, py::arg("fixtures") = 20, py::arg("seed") = 1);
}
