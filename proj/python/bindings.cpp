#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "anomod/anomaly.hpp"
#include "anomod/cli.hpp"
#include "anomod/errors.hpp"

namespace py = pybind11;

namespace {

std::tuple<int, std::string, std::string> runCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = anomod::cli::run(args, out, err);
  }
  return {code, out.str(), err.str()};
}

std::string verifyJson(const std::string& target, const std::string& ranks, const std::string& xi,
                       const std::string& eulerMode, std::size_t qOrder, bool timing) {
  anomod::VerificationConfig c = anomod::defaultConfigFor(target);
  if (!ranks.empty()) c.ranks = anomod::RankSpec::parse(ranks);
  if (!xi.empty()) c.xiTrivial = xi == "trivial";
  c.eulerMode = anomod::parseEulerMode(eulerMode);
  c.qOrder = qOrder;
  c.validate();
  py::gil_scoped_release release;
  return anomod::toJson(anomod::verifyIdentity(target, c), timing).dump();
}

std::vector<std::string> theta2Coefficients(std::size_t qOrder, const std::string& ranks, bool xiTrivial) {
  anomod::ContextPtr ctx = anomod::standardContext(12);
  anomod::ModelOptions options{ranks.empty() ? anomod::RankSpec::symbolic() : anomod::RankSpec::parse(ranks),
                               xiTrivial};
  anomod::ChernModel model = anomod::standardModel(ctx, options);
  auto s = anomod::theta2Expansion(model, qOrder);
  std::vector<std::string> out;
  for (std::size_t h = 0; h < s.order(); ++h) out.push_back(s.coefficient(h).toString());
  return out;
}

}  // namespace

PYBIND11_MODULE(_anomod, m) {
  m.doc() = "Exact verification of anomaly-factorization identities";

  py::register_exception<anomod::ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<anomod::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<anomod::UnsupportedConfiguration>(m, "UnsupportedConfiguration", PyExc_ValueError);

  m.def("run_cli", &runCli, py::arg("args"), "Run the command-line interface; returns (exit_code, stdout, stderr).");
  m.def("verify_json", &verifyJson, py::arg("target"), py::arg("ranks") = "", py::arg("xi") = "",
        py::arg("euler_mode") = "both", py::arg("q_order") = 12, py::arg("timing") = false,
        "Verify one identity target; returns the JSON report document.");
  m.def("theta2_coefficients", &theta2Coefficients, py::arg("q_order") = 4, py::arg("ranks") = "",
        py::arg("xi_trivial") = false, "Chern-character coefficients of Theta_2 in half-units of q.");
  m.def("identity_targets", &anomod::identityTargets, "Names accepted by verify_json.");
}
