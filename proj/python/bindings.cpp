#include "cuspgrp/cli.hpp"

#include <pybind11/pybind11.h>

#include <sstream>
#include <stdexcept>

namespace py = pybind11;
using namespace cuspgrp;

namespace {

// runs a CLI verb with --json and hands back its text
std::string call(Command c) {
  c.json = true;
  std::ostringstream out, err;
  int rc = run(c, out, err);
  if (rc == kUsage) throw py::value_error(err.str());
  if (rc != kPass) throw std::runtime_error(err.str());
  return out.str();
}

Command make(const std::string& verb, u64 N) {
  Command c;
  c.verb = verb;
  c.N = N;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.def("cusps_json", [](u64 N) { return call(make("cusps", N)); }, py::arg("N"));
  m.def(
      "group_json",
      [](u64 N, u64 ell) {
        auto c = make("group", N);
        c.ell = ell;
        return call(c);
      },
      py::arg("N"), py::arg("ell") = 0);
  m.def(
      "profile_json",
      [](u64 N, const std::string& divisor) {
        auto c = make("order", N);
        c.divisor = divisor;
        return call(c);
      },
      py::arg("N"), py::arg("divisor"));
  m.def(
      "eta_json",
      [](u64 N, const std::string& divisor, int qexp) {
        auto c = make("eta", N);
        c.divisor = divisor;
        c.qexp = qexp;
        return call(c);
      },
      py::arg("N"), py::arg("divisor"), py::arg("qexp") = 20);
  m.def("crosscheck_json", [](u64 N) { return crosscheck_json(crosscheck(N)).dump(); }, py::arg("N"));
  m.def(
      "parse_divisor_json",
      [](const std::string& text, u64 N) {
        try {
          return divisor_json(parse_divisor_spec(text, N)).dump();
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("text"), py::arg("N"));
  m.def("group_text", [](u64 N) { return group_text(compute_group(N)); }, py::arg("N"));
}
