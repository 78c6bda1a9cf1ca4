#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdamp/bargmann.hpp"
#include "qdamp/classical.hpp"
#include "qdamp/cli.hpp"
#include "qdamp/dissipative.hpp"
#include "qdamp/fock.hpp"
#include "qdamp/squeeze.hpp"

namespace py = pybind11;
using namespace qdamp;

namespace {

fock::Operator as_operator(const fock::Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("operator matrix must be square");
  return fock::Operator(fock::FockSpace(static_cast<std::size_t>(m.rows()), fock::kWorkingMaxDim), m);
}

// Rationals cross the boundary as fractions.Fraction; anything whose str() is
// "p/q" or an integer is accepted on input.
mpq_class to_mpq(const py::handle& obj) {
  mpq_class q;
  const std::string text = py::str(obj);
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational: " + text);
  }
  q.canonicalize();
  return q;
}

py::object to_fraction(const mpq_class& q) {
  return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

bargmann::Polynomial to_poly(const py::sequence& coeffs) {
  std::vector<mpq_class> c;
  for (const auto& x : coeffs) c.push_back(to_mpq(x));
  return bargmann::Polynomial(std::move(c));
}

py::list from_poly(const bargmann::Polynomial& p) {
  py::list out;
  for (const auto& c : p.coeffs()) out.append(to_fraction(c));
  return out;
}

bargmann::QParam to_q(const py::handle& obj) { return bargmann::QParam(to_mpq(obj)); }

py::object report_to_py(const VerificationReport& r) {
  return py::module_::import("json").attr("loads")(r.to_json().dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "q-deformed oscillator algebra and damped-oscillator verification engine";

  py::register_exception<ToleranceError>(m, "ToleranceError", PyExc_RuntimeError);

  // fock
  m.def("ladder_ops", [](std::size_t dim) {
    const auto [a, ad] = fock::ladder_ops(fock::FockSpace(dim));
    return py::make_tuple(a.matrix(), ad.matrix());
  }, py::arg("dim"), "(lowering, raising) on the D-level truncated space.");
  m.def("number_op", [](std::size_t dim) { return fock::number_op(fock::FockSpace(dim)).matrix(); },
        py::arg("dim"));
  m.def("commutator", [](const fock::Matrix& x, const fock::Matrix& y) {
    return fock::commutator(as_operator(x), as_operator(y)).matrix();
  });
  m.def("matrix_exponential", [](const fock::Matrix& x, double tol) {
    return fock::matrix_exponential(as_operator(x), tol).matrix();
  }, py::arg("x"), py::arg("tol") = fock::kDefaultExpmTol);
  m.def("interior_residual", [](const fock::Matrix& x, const fock::Matrix& y, std::size_t margin) {
    return fock::interior_residual(as_operator(x), as_operator(y), margin);
  }, py::arg("x"), py::arg("y"), py::arg("margin"));
  m.def("policy_margin", &fock::policy_margin, py::arg("exponent_l1"), py::arg("ladder_power"));

  // bargmann
  m.def("q_number", [](std::size_t n, const py::object& q) {
    return to_fraction(bargmann::q_number(n, to_q(q)));
  }, py::arg("n"), py::arg("q"));
  m.def("q_derivative", [](const py::sequence& f, const py::object& q) {
    return from_poly(bargmann::q_derivative(to_poly(f), to_q(q)));
  }, py::arg("coeffs"), py::arg("q"));
  m.def("q_derivative_by_difference", [](const py::sequence& f, const py::object& q) {
    return from_poly(bargmann::q_derivative_by_difference(to_poly(f), to_q(q)));
  }, py::arg("coeffs"), py::arg("q"));
  m.def("dilate", [](const py::sequence& f, const py::object& q) {
    return from_poly(bargmann::dilate(to_poly(f), to_q(q)));
  }, py::arg("coeffs"), py::arg("q"));
  m.def("qwh_commutator", [](const py::sequence& f, const py::object& q) {
    return from_poly(bargmann::qwh_commutator(to_poly(f), to_q(q)));
  }, py::arg("coeffs"), py::arg("q"));
  m.def("scale_generator_identity", [](const py::sequence& f) {
    const auto [lhs, rhs] = bargmann::scale_generator_identity(to_poly(f));
    return py::make_tuple(from_poly(lhs), from_poly(rhs));
  }, py::arg("coeffs"));
  m.def("to_fock", [](const py::sequence& f, std::size_t dim) {
    return bargmann::to_fock(to_poly(f), fock::FockSpace(dim)).amplitudes();
  }, py::arg("coeffs"), py::arg("dim"));

  // squeeze
  m.def("squeeze_operator", [](std::size_t dim, double zeta) {
    return squeeze::squeeze_operator(fock::FockSpace(dim), zeta).matrix();
  }, py::arg("dim"), py::arg("zeta"));
  m.def("dilation_vs_squeeze", [](std::size_t dim, double zeta, std::size_t margin) {
    return squeeze::dilation_vs_squeeze(fock::FockSpace(dim), zeta, margin);
  }, py::arg("dim"), py::arg("zeta"), py::arg("margin"));
  m.def("bogoliubov_residual", [](std::size_t dim, double zeta, std::optional<std::size_t> margin) {
    return squeeze::bogoliubov_residual(fock::FockSpace(dim), zeta,
                                        margin.value_or(squeeze::bogoliubov_margin(zeta)));
  }, py::arg("dim"), py::arg("zeta"), py::arg("margin") = py::none());
  m.def("bogoliubov_margin", &squeeze::bogoliubov_margin, py::arg("zeta"));
  m.def("working_dim", &squeeze::working_dim, py::arg("dim"), py::arg("zeta"));
  m.def("su11_single_mode", [](std::size_t dim, std::size_t margin) {
    return report_to_py(squeeze::su11_single_mode(fock::FockSpace(dim), margin));
  }, py::arg("dim"), py::arg("margin"));
  m.def("damped_amplitude", &squeeze::damped_amplitude, py::arg("z0"), py::arg("gamma"),
        py::arg("t"));

  // dissipative
  py::class_<dissipative::ModeSpec>(m, "ModeSpec")
      .def(py::init([](std::string kappa, double omega, double gamma) {
             return dissipative::ModeSpec{std::move(kappa), omega, gamma};
           }),
           py::arg("kappa"), py::arg("omega"), py::arg("gamma"))
      .def_readwrite("kappa", &dissipative::ModeSpec::kappa)
      .def_readwrite("omega", &dissipative::ModeSpec::omega)
      .def_readwrite("gamma", &dissipative::ModeSpec::gamma);
  py::class_<dissipative::PairedState>(m, "PairedState")
      .def_property_readonly("gamma_t", &dissipative::PairedState::gamma_t)
      .def_property_readonly("coeffs", &dissipative::PairedState::coeffs)
      .def("norm_squared", &dissipative::PairedState::norm_squared)
      .def("mean_number", &dissipative::PairedState::mean_number)
      .def("tail_bound", &dissipative::PairedState::tail_bound);
  m.def("ground_state", &dissipative::ground_state, py::arg("gamma"), py::arg("t"), py::arg("dim"),
        py::arg("max_tail") = py::none());
  m.def("minimal_dim", &dissipative::minimal_dim, py::arg("gamma_t"), py::arg("tail"));
  m.def("mode_number", &dissipative::mode_number, py::arg("gamma"), py::arg("t"));
  m.def("vacuum_overlap", &dissipative::vacuum_overlap, py::arg("modes"), py::arg("t"));
  m.def("overlap_two_times", &dissipative::overlap_two_times, py::arg("modes"), py::arg("t"),
        py::arg("t2"));
  m.def("verify_evolved_ops", [](std::size_t dim, double gamma, double t, std::size_t margin) {
    return report_to_py(dissipative::verify_evolved_ops(dissipative::TwoModeSpace(dim), gamma, t, margin));
  }, py::arg("dim"), py::arg("gamma"), py::arg("t"), py::arg("margin") = 2);
  m.def("hole_relations", [](std::size_t dim, double gamma, double t) {
    return report_to_py(dissipative::hole_relations(dissipative::TwoModeSpace(dim), gamma, t));
  }, py::arg("dim"), py::arg("gamma"), py::arg("t"));
  m.def("verify_canonical_map", [](std::size_t dim, std::size_t margin) {
    return report_to_py(dissipative::verify_canonical_map(dissipative::TwoModeSpace(dim), margin));
  }, py::arg("dim"), py::arg("margin") = 3);
  m.def("quadratic_constant", [](std::size_t dim, std::size_t margin) {
    return dissipative::quadratic_identity(dissipative::TwoModeSpace(dim), margin).constant;
  }, py::arg("dim"), py::arg("margin") = 2);
  m.def("verify_double_squeeze", [](std::size_t dim, double zeta, std::size_t margin) {
    return report_to_py(dissipative::verify_double_squeeze(dissipative::TwoModeSpace(dim), zeta, margin));
  }, py::arg("dim"), py::arg("zeta"), py::arg("margin") = 2);
  m.def("h0_hi_commute", [](std::size_t dim, double omega, double gamma, std::size_t margin) {
    return dissipative::h0_hi_commute(dissipative::TwoModeSpace(dim), omega, gamma, margin);
  }, py::arg("dim"), py::arg("omega"), py::arg("gamma"), py::arg("margin") = 2);
  m.def("tfd_theta", &dissipative::tfd_theta, py::arg("beta"), py::arg("omega"));
  m.def("thermal_number", &dissipative::thermal_number, py::arg("beta"), py::arg("omega"));

  // classical
  py::class_<classical::OscillatorParams>(m, "OscillatorParams")
      .def(py::init([](double mass, double gamma, double kappa_spring, double z0, double v0) {
             return classical::OscillatorParams{mass, gamma, kappa_spring, z0, v0};
           }),
           py::arg("m") = 1.0, py::arg("gamma") = 0.5, py::arg("kappa_spring") = 1.0,
           py::arg("z0") = 1.0, py::arg("v0") = 0.0)
      .def_readwrite("m", &classical::OscillatorParams::m)
      .def_readwrite("gamma", &classical::OscillatorParams::gamma)
      .def_readwrite("kappa_spring", &classical::OscillatorParams::kappa_spring)
      .def_readwrite("z0", &classical::OscillatorParams::z0)
      .def_readwrite("v0", &classical::OscillatorParams::v0);
  m.def("shifted_frequency", &classical::shifted_frequency, py::arg("params"));
  m.def("analytic_solution", [](const classical::OscillatorParams& p, double t) {
    const auto y = classical::analytic_solution(p, t);
    return py::make_tuple(y.z, y.v);
  }, py::arg("params"), py::arg("t"));
  m.def("integrate", [](const classical::OscillatorParams& p, double dt, double T) {
    const auto series = classical::integrate(p, dt, T);
    Eigen::MatrixX3d out(static_cast<Eigen::Index>(series.size()), 3);
    for (std::size_t i = 0; i < series.size(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) << series[i].t, series[i].z, series[i].v;
    }
    return out;
  }, py::arg("params"), py::arg("dt"), py::arg("T"), "Rows of (t, z, v).");

  // cli
  m.def("verify", [](const std::string& config_json) {
    const cli::RunConfig config =
        cli::parse_config(config_json.empty() ? nlohmann::json::object() : nlohmann::json::parse(config_json));
    return report_to_py(cli::cmd_verify(config));
  }, py::arg("config_json") = "", "Run the identity suite; returns the report as a dict.");
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"qdamp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
