#include "qdamp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "qdamp/bargmann.hpp"
#include "qdamp/fock.hpp"
#include "qdamp/squeeze.hpp"

namespace qdamp::cli {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + "." + key + ": " + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const char* where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

Grid parse_grid(const json& obj, const char* where, const char* start_key, const char* end_key) {
  reject_unknown(obj, {start_key, end_key, "steps"}, where);
  Grid g;
  g.start = get_field<double>(obj, start_key, where);
  g.end = get_field<double>(obj, end_key, where);
  const auto steps = get_field<long long>(obj, "steps", where);
  if (steps < 1) throw ConfigError(std::string(where) + ".steps must be >= 1");
  g.steps = static_cast<std::size_t>(steps);
  return g;
}

std::string label(const char* base, const char* key, double value) {
  std::ostringstream out;
  out << base << "[" << key << "=" << value << "]";
  return out.str();
}

// --- verification suite -----------------------------------------------------

struct SuiteContext {
  std::optional<std::size_t> dim;
};

using Group = std::function<VerificationReport(const SuiteContext&)>;

struct GroupSpec {
  std::string name;
  std::string equation;
  std::vector<std::size_t> default_dims;
  Group body;
};

std::size_t pick(const SuiteContext& ctx, std::size_t fallback) { return ctx.dim.value_or(fallback); }

VerificationReport exact_qwh_suite(const bargmann::QParam& q, const std::string& qtext) {
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n <= 64; ++n) {
    const auto f = bargmann::Polynomial::monomial(n);
    if (!(bargmann::qwh_commutator(f, q) == bargmann::dilate(f, q))) ++mismatches;
  }
  std::size_t qd_mismatches = 0;
  for (std::size_t n = 0; n <= 64; ++n) {
    const auto f = bargmann::Polynomial::monomial(n);
    const auto closed = bargmann::q_derivative(f, q);
    const auto expected =
        n == 0 ? bargmann::Polynomial() : bargmann::Polynomial::monomial(n - 1, bargmann::q_number(n, q));
    if (!(closed == expected) || !(closed == bargmann::q_derivative_by_difference(f, q))) {
      ++qd_mismatches;
    }
  }
  VerificationReport r;
  r.add("bargmann.qwh_commutator[q=" + qtext + "]",
        "[a_q, a^_q] z^n = (qz)^n, n <= 64 (exact mismatch count)",
        static_cast<double>(mismatches), 0.0, std::nullopt, {});
  r.add("bargmann.q_derivative[q=" + qtext + "]",
        "D_q z^n = [n]_q z^(n-1) = (f(qz) - f(z)) / ((q - 1) z), n <= 64 (exact mismatch count)",
        static_cast<double>(qd_mismatches), 0.0, std::nullopt, {});
  return r;
}

std::vector<GroupSpec> suite() {
  std::vector<GroupSpec> groups;

  groups.push_back({"fock.ccr", "[a, a^dagger] = 1", {16}, [](const SuiteContext& ctx) {
                      const fock::FockSpace s(pick(ctx, 16));
                      const auto [a, ad] = fock::ladder_ops(s);
                      VerificationReport r;
                      r.add("fock.ccr", "[a, a^dagger] = 1",
                            fock::interior_residual(fock::commutator(a, ad),
                                                    fock::Operator::identity(s), 1),
                            1e-13, std::size_t{1}, {s.dim()});
                      return r;
                    }});

  for (const char* qtext : {"2", "3/2", "7/5"}) {
    groups.push_back({std::string("bargmann[q=") + qtext + "]", "exact q-calculus", {},
                      [qtext](const SuiteContext&) {
                        return exact_qwh_suite(bargmann::QParam::parse(qtext), qtext);
                      }});
  }
  groups.push_back({"bargmann.scale_generator", "2 z f' = (alpha^2 - alpha^dagger^2) f - f", {},
                    [](const SuiteContext&) {
                      std::size_t mismatches = 0;
                      std::vector<mpq_class> dense;
                      for (std::size_t n = 0; n <= 64; ++n) {
                        const auto f = bargmann::Polynomial::monomial(n);
                        const auto [lhs, rhs] = bargmann::scale_generator_identity(f);
                        if (!(lhs == rhs)) ++mismatches;
                        dense.emplace_back(static_cast<long>(n % 7) - 3, static_cast<long>(n + 1));
                      }
                      const auto [lhs, rhs] =
                          bargmann::scale_generator_identity(bargmann::Polynomial(dense));
                      if (!(lhs == rhs)) ++mismatches;
                      VerificationReport r;
                      r.add("bargmann.scale_generator",
                            "2 z f' = (alpha^2 - alpha^dagger^2) f - f, degree <= 64 "
                            "(exact mismatch count)",
                            static_cast<double>(mismatches), 0.0, std::nullopt, {});
                      return r;
                    }});

  for (double zeta : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0}) {
    groups.push_back(
        {label("squeeze.dilation", "zeta", zeta), "sqrt(q) exp(zeta G) = S(zeta)", {32},
         [zeta](const SuiteContext& ctx) {
           const fock::FockSpace s(pick(ctx, 32));
           const std::size_t m = fock::policy_margin(std::abs(zeta), 2);
           VerificationReport r;
           r.add(label("squeeze.dilation", "zeta", zeta),
                 "sqrt(q) [a_q, a^_q] = sqrt(q) exp(zeta z d/dz) = S(zeta)",
                 squeeze::dilation_vs_squeeze(s, zeta, m), 1e-9, m, {s.dim()});
           return r;
         }});
    groups.push_back(
        {label("squeeze.bogoliubov", "zeta", zeta),
         "S^-1 alpha S = alpha cosh zeta - alpha^dagger sinh zeta", {48},
         [zeta](const SuiteContext& ctx) {
           const fock::FockSpace s(pick(ctx, 48));
           const std::size_t m = squeeze::bogoliubov_margin(zeta);
           VerificationReport r;
           r.add(label("squeeze.bogoliubov", "zeta", zeta),
                 "S(zeta)^-1 alpha S(zeta) = alpha cosh zeta - alpha^dagger sinh zeta",
                 squeeze::bogoliubov_residual(s, zeta, m), 1e-8, m, {s.dim()});
           r.add(label("squeeze.bogoliubov_ccr", "zeta", zeta),
                 "[alpha(zeta), alpha(zeta)^dagger] = 1",
                 squeeze::bogoliubov_ccr_residual(s, zeta, m), 1e-8, m, {s.dim()});
           return r;
         }});
  }
  groups.push_back({"squeeze.unitarity", "S(zeta)^dagger S(zeta) = 1", {32},
                    [](const SuiteContext& ctx) {
                      const fock::FockSpace s(pick(ctx, 32));
                      const auto op = squeeze::squeeze_operator(s, 1.0);
                      VerificationReport r;
                      r.add("squeeze.unitarity[zeta=1]", "S(zeta)^dagger S(zeta) = 1",
                            fock::max_abs(op.adjoint() * op - fock::Operator::identity(s)), 1e-10,
                            std::size_t{0}, {s.dim()});
                      return r;
                    }});
  groups.push_back({"su11.single", "su(1,1) closure of K_+, K_-, K_z", {16},
                    [](const SuiteContext& ctx) {
                      return squeeze::su11_single_mode(fock::FockSpace(pick(ctx, 16)), 3);
                    }});

  groups.push_back({"classical.bridge", "envelope = z0 exp(-Gamma t)", {}, [](const SuiteContext&) {
                      const classical::OscillatorParams p{1.0, 0.5, 1.0, 1.0, 0.0};
                      double worst = 0.0;
                      const double g = classical::damping_rate(p);
                      const double amp = classical::amplitude(p);
                      for (int k = 0; k <= 100; ++k) {
                        const double t = 0.1 * k;
                        const double want = amp * std::exp(-g * t);
                        worst = std::max(worst, std::abs(classical::envelope(p, t) - want) / want);
                      }
                      const auto series = classical::integrate(p, 1e-3, 10.0);
                      double rk4 = 0.0;
                      for (const auto& smp : series) {
                        rk4 = std::max(rk4, std::abs(smp.z - classical::analytic_solution(p, smp.t).z));
                      }
                      VerificationReport r;
                      r.add("classical.envelope", "z(zeta) = z0 exp(-zeta), zeta = Gamma t (relative)",
                            worst, 1e-14, std::nullopt, {});
                      r.add("classical.rk4_vs_closed_form",
                            "m z'' + gamma z' + kappa z = 0, RK4 dt = 1e-3 vs closed form", rk4, 1e-8,
                            std::nullopt, {});
                      return r;
                    }});

  for (double gt : {0.5, 1.0, 2.0}) {
    groups.push_back(
        {label("dissipative.mode_number", "gt", gt), "N_A = sinh^2(Gamma t)", {},
         [gt](const SuiteContext&) {
           const std::size_t d = dissipative::minimal_dim(gt, 1e-8);
           const auto gs = dissipative::ground_state(1.0, gt, d, 1e-8);
           const double tail = gs.tail_bound();
           VerificationReport r;
           r.add(label("dissipative.mode_number", "gt", gt),
                 "sum n c_n^2 = sinh^2(Gamma t), tolerance 2 D tanh^(2D)",
                 std::abs(gs.mean_number() - dissipative::mode_number(1.0, gt)),
                 2.0 * static_cast<double>(d) * tail, std::nullopt, {d});
           r.add(label("dissipative.normalization", "gt", gt),
                 "1 - sum c_n^2 = tanh^(2D) (truncation tail of <0(t)|0(t)> = 1)",
                 std::abs(1.0 - gs.norm_squared() - tail), 1e-12, std::nullopt, {d});
           return r;
         }});
  }
  groups.push_back(
      {"dissipative.overlap", "<0(t)|0> = exp(-sum ln cosh Gamma t)", {}, [](const SuiteContext&) {
         const double gt = 1.0;
         const std::size_t d = dissipative::minimal_dim(gt, 1e-16);
         const std::vector<dissipative::ModeSpec> one{{"k", 1.0, 1.0}};
         const double paired = dissipative::paired_overlap(dissipative::ground_state(1.0, gt, d),
                                                           dissipative::ground_state(1.0, 0.0, d));
         double loglin = 0.0;
         const double log1 = std::log(dissipative::vacuum_overlap(one, gt));
         double strict = 0.0;
         double prev = 1.0;
         for (std::size_t m = 1; m <= 64; ++m) {
           const std::vector<dissipative::ModeSpec> modes(m, one.front());
           const double o = dissipative::vacuum_overlap(modes, gt);
           loglin = std::max(loglin, std::abs(std::log(o) - static_cast<double>(m) * log1));
           if (!(o < prev)) strict += 1.0;
           prev = o;
         }
         const double series = dissipative::overlap_two_times_series(1.0, 2.0, 1.0, 200);
         VerificationReport r;
         r.add("dissipative.overlap_single", "<0(t)|0> = 1 / cosh(Gamma t) (paired inner product)",
               std::abs(paired - dissipative::vacuum_overlap(one, gt)), 1e-10, std::nullopt, {d});
         r.add("dissipative.overlap_loglinear", "log o(M) = M log o(1), M <= 64", loglin, 1e-12,
               std::nullopt, {});
         r.add("dissipative.overlap_decreasing", "o(M) strictly decreasing in M (violation count)",
               strict, 0.0, std::nullopt, {});
         r.add("dissipative.overlap_two_times",
               "<0(t)|0(t')> = 1 / cosh(Gamma (t - t')) (truncated series, D = 200)",
               std::abs(series - dissipative::overlap_two_times(one, 2.0, 1.0)), 1e-10,
               std::nullopt, {200});
         return r;
       }});

  for (double gt : {0.3, 0.7}) {
    groups.push_back({label("evolved", "gt", gt), "A(t), B(t) Bogoliubov transformations", {12, 12},
                      [gt](const SuiteContext& ctx) {
                        const dissipative::TwoModeSpace s(pick(ctx, 12));
                        auto r = dissipative::verify_evolved_ops(s, 1.0, gt, 2);
                        r.merge(dissipative::hole_relations(s, 1.0, gt));
                        VerificationReport named;
                        for (auto rec : r.records()) {
                          rec.name = label(rec.name.c_str(), "gt", gt);
                          if (rec.status == CheckStatus::kSkipped) {
                            named.add_skipped(rec.name, rec.equation, rec.dims, rec.reason);
                          } else {
                            named.add(rec.name, rec.equation, rec.residual, rec.tolerance,
                                      rec.margin, rec.dims, rec.reason);
                          }
                        }
                        return named;
                      }});
  }
  groups.push_back({"canonical", "A = (alpha + beta)/sqrt2, B = (alpha - beta)/sqrt2", {12, 12},
                    [](const SuiteContext& ctx) {
                      return dissipative::verify_canonical_map(
                          dissipative::TwoModeSpace(pick(ctx, 12)), 3);
                    }});
  groups.push_back({"su11.pair", "su(1,1) closure of J_+, J_-, J_3", {10, 10},
                    [](const SuiteContext& ctx) {
                      return dissipative::su11_two_mode(dissipative::TwoModeSpace(pick(ctx, 10)),
                                                        2);
                    }});
  for (double zeta : {0.3, 0.6}) {
    groups.push_back(
        {label("double_squeeze", "zeta", zeta), "double mode squeezing = exp(i H_I t)", {12, 12},
         [zeta](const SuiteContext& ctx) {
           const auto r = dissipative::verify_double_squeeze(
               dissipative::TwoModeSpace(pick(ctx, 12)), zeta, 2);
           VerificationReport named;
           for (auto rec : r.records()) {
             rec.name = label(rec.name.c_str(), "zeta", zeta);
             if (rec.status == CheckStatus::kSkipped) {
               named.add_skipped(rec.name, rec.equation, rec.dims, rec.reason);
             } else {
               named.add(rec.name, rec.equation, rec.residual, rec.tolerance, rec.margin,
                         rec.dims, rec.reason);
             }
           }
           return named;
         }});
  }
  groups.push_back({"hamiltonian.h0_hi", "[H_0, H_I] = 0", {10, 10}, [](const SuiteContext& ctx) {
                      const dissipative::TwoModeSpace s(pick(ctx, 10));
                      VerificationReport r;
                      r.add("hamiltonian.h0_hi", "[H_0, H_I] = 0 (Omega = 1.3, Gamma = 0.7)",
                            dissipative::h0_hi_commute(s, 1.3, 0.7, 2), 1e-10, std::size_t{2},
                            {s.per_mode_dim(), s.per_mode_dim()});
                      return r;
                    }});
  groups.push_back({"tfd", "zeta_kappa = theta_kappa(beta)", {}, [](const SuiteContext&) {
                      VerificationReport r;
                      r.add("tfd.thermal_number", "sinh^2 theta(beta) = 1 at beta Omega = ln 2",
                            std::abs(dissipative::thermal_number(std::numbers::ln2, 1.0) - 1.0),
                            1e-12, std::nullopt, {});
                      double violations = 0.0;
                      double prev = dissipative::thermal_number(0.5, 1.0);
                      double prev_theta = dissipative::tfd_theta(0.5, 1.0);
                      for (int k = 1; k <= 200; ++k) {
                        const double x = 0.5 + 0.5 * k;
                        const double n = dissipative::thermal_number(x, 1.0);
                        const double th = dissipative::tfd_theta(x, 1.0);
                        if (!(n < prev) || !(th < prev_theta)) violations += 1.0;
                        prev = n;
                        prev_theta = th;
                      }
                      r.add("tfd.monotone", "theta(beta), sinh^2 theta decrease as beta Omega grows "
                            "(violation count)", violations, 0.0, std::nullopt, {});
                      r.add("tfd.zero_temperature", "theta(beta) -> 0 as beta Omega -> infinity "
                            "(theta at beta Omega = 100)",
                            dissipative::tfd_theta(100.0, 1.0), 1e-20, std::nullopt, {});
                      return r;
                    }});
  return groups;
}

}  // namespace

// --- configuration ------------------------------------------------------------

std::vector<double> Grid::points() const {
  std::vector<double> pts(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    pts[k] = k == steps ? end
                        : start + (end - start) * static_cast<double>(k) / static_cast<double>(steps);
  }
  return pts;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::kVerify:
      return "verify";
    case Command::kEvolve:
      return "evolve";
    case Command::kClassical:
      return "classical";
    case Command::kSqueeze:
      return "squeeze";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::kVerify, Command::kEvolve, Command::kClassical, Command::kSqueeze}) {
    if (command_name(c) == name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc,
                 {"command", "modes", "time_grid", "dim", "tolerance", "output_path",
                  "output_format", "oscillator", "zeta_grid"},
                 "config");
  RunConfig c;
  if (doc.contains("command")) c.command = parse_command(get_field<std::string>(doc, "command", "config"));
  if (doc.contains("modes")) {
    const json& modes = doc.at("modes");
    if (!modes.is_array()) throw ConfigError("config.modes: expected an array");
    c.modes.clear();
    std::size_t k = 0;
    for (const auto& m : modes) {
      reject_unknown(m, {"kappa", "Omega", "Gamma"}, "config.modes[]");
      dissipative::ModeSpec spec;
      spec.kappa = m.contains("kappa") ? get_field<std::string>(m, "kappa", "config.modes[]")
                                       : "k" + std::to_string(k);
      spec.omega = m.contains("Omega") ? get_field<double>(m, "Omega", "config.modes[]") : 1.0;
      spec.gamma = get_field<double>(m, "Gamma", "config.modes[]");
      c.modes.push_back(std::move(spec));
      ++k;
    }
  }
  if (doc.contains("time_grid")) {
    c.time_grid = parse_grid(doc.at("time_grid"), "config.time_grid", "t_start", "t_end");
  }
  if (doc.contains("dim")) {
    const auto d = get_field<long long>(doc, "dim", "config");
    if (d < 1) throw ConfigError("config.dim must be >= 1");
    c.dim = static_cast<std::size_t>(d);
  }
  if (doc.contains("tolerance")) c.tolerance = get_field<double>(doc, "tolerance", "config");
  if (doc.contains("output_path")) c.output_path = get_field<std::string>(doc, "output_path", "config");
  if (doc.contains("output_format")) {
    const auto f = get_field<std::string>(doc, "output_format", "config");
    if (f == "csv") {
      c.output_format = OutputFormat::kCsv;
    } else if (f == "json") {
      c.output_format = OutputFormat::kJson;
    } else {
      throw ConfigError("config.output_format must be 'csv' or 'json'");
    }
  }
  if (doc.contains("oscillator")) {
    const json& o = doc.at("oscillator");
    reject_unknown(o, {"m", "gamma", "kappa_spring", "z0", "v0", "dt"}, "config.oscillator");
    if (o.contains("m")) c.oscillator.m = get_field<double>(o, "m", "config.oscillator");
    if (o.contains("gamma")) c.oscillator.gamma = get_field<double>(o, "gamma", "config.oscillator");
    if (o.contains("kappa_spring")) {
      c.oscillator.kappa_spring = get_field<double>(o, "kappa_spring", "config.oscillator");
    }
    if (o.contains("z0")) c.oscillator.z0 = get_field<double>(o, "z0", "config.oscillator");
    if (o.contains("v0")) c.oscillator.v0 = get_field<double>(o, "v0", "config.oscillator");
    if (o.contains("dt")) c.dt = get_field<double>(o, "dt", "config.oscillator");
  }
  if (doc.contains("zeta_grid")) c.zeta_grid = parse_grid(doc.at("zeta_grid"), "config.zeta_grid", "start", "end");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

void validate(const RunConfig& c) {
  if (c.time_grid) {
    const Grid& g = *c.time_grid;
    if (!std::isfinite(g.start) || !std::isfinite(g.end) || g.start < 0.0 || g.end < g.start) {
      throw ConfigError("time_grid: requires t_end >= t_start >= 0");
    }
    if (g.steps < 1) throw ConfigError("time_grid.steps must be >= 1");
  }
  if (c.zeta_grid.steps < 1 || !(c.zeta_grid.end >= c.zeta_grid.start)) {
    throw ConfigError("zeta_grid: requires end >= start and steps >= 1");
  }
  if (c.tolerance && !(*c.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (c.dim && *c.dim < 1) throw ConfigError("dim must be >= 1");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ConfigError("oscillator.dt must be > 0");
  try {
    dissipative::validate_modes(c.modes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("modes: ") + e.what());
  }
}

// --- output -------------------------------------------------------------------

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

json to_json(const Table& table) {
  return json{{"columns", table.columns}, {"rows", table.rows}};
}

// --- commands -----------------------------------------------------------------

VerificationReport cmd_verify(const RunConfig& config) {
  validate(config);
  const SuiteContext ctx{config.dim};
  VerificationReport report;
  for (const auto& g : suite()) {
    std::vector<std::size_t> dims = g.default_dims;
    if (ctx.dim) std::fill(dims.begin(), dims.end(), *ctx.dim);
    try {
      report.merge(g.body(ctx));
    } catch (const ToleranceError& e) {
      report.add(g.name, g.equation, e.estimate(), e.tolerance(), std::nullopt, dims,
                 std::string("exponential not certified: ") + e.what());
    } catch (const std::invalid_argument& e) {
      report.add_skipped(g.name, g.equation, dims, e.what());
    }
  }
  if (config.tolerance) report.override_tolerance(*config.tolerance);
  report.sort_by_name();
  return report;
}

Table cmd_evolve(const RunConfig& config) {
  validate(config);
  const Grid grid = config.time_grid.value_or(Grid{0.0, 2.0, 20});
  Table t;
  t.columns = {"t", "overlap", "total_N_A"};
  for (const auto& m : config.modes) t.columns.push_back("N_A[" + m.kappa + "]");
  for (double time : grid.points()) {
    std::vector<double> row{time, dissipative::vacuum_overlap(config.modes, time), 0.0};
    double total = 0.0;
    for (const auto& m : config.modes) {
      const double n = dissipative::mode_number(m.gamma, time);
      total += n;
      row.push_back(n);
    }
    row[2] = total;
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_classical(const RunConfig& config) {
  validate(config);
  const auto& p = config.oscillator;
  classical::shifted_frequency(p);  // rejects over/critical damping up front
  const Grid grid = config.time_grid.value_or(Grid{0.0, 10.0, 100});
  if (grid.end < config.dt) throw ConfigError("classical: t_end must be >= dt");
  const auto series = classical::integrate(p, config.dt, grid.end);
  const double gamma = classical::damping_rate(p);
  Table t;
  t.columns = {"t", "z_numeric", "z_analytic", "envelope"};
  for (double time : grid.points()) {
    const double ratio = time / config.dt;
    const auto k = static_cast<std::size_t>(std::llround(ratio));
    const bool on_grid = std::abs(ratio - static_cast<double>(k)) <= 1e-9 * std::max(1.0, ratio);
    const bool at_end = time == grid.end;
    if (!on_grid && !at_end) {
      throw ConfigError("classical: time grid point " + format_number(time) +
                        " is not a multiple of dt");
    }
    const auto& s = at_end ? series.back() : series.at(k);
    t.rows.push_back({s.t, s.z, classical::analytic_solution(p, s.t).z,
                      squeeze::damped_amplitude(p.z0, gamma, s.t).real()});
  }
  return t;
}

Table cmd_squeeze(const RunConfig& config) {
  validate(config);
  const fock::FockSpace space(config.dim.value_or(48));
  const std::size_t n_amp = std::min<std::size_t>(9, (space.dim() + 1) / 2);
  Table t;
  t.columns = {"zeta", "bogoliubov_residual", "dilation_residual", "vacuum_overlap"};
  for (std::size_t n = 0; n < n_amp; ++n) t.columns.push_back("amp_" + std::to_string(2 * n));
  for (double zeta : config.zeta_grid.points()) {
    const auto psi = squeeze::squeezed_vacuum(space, zeta);
    std::vector<double> row{
        zeta,
        squeeze::bogoliubov_residual(space, zeta, squeeze::bogoliubov_margin(zeta)),
        squeeze::dilation_vs_squeeze(space, zeta, fock::policy_margin(std::abs(zeta), 2)),
        psi(0).real()};
    for (std::size_t n = 0; n < n_amp; ++n) row.push_back(psi(2 * n).real());
    t.rows.push_back(std::move(row));
  }
  return t;
}

// --- entry point --------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed oscillator algebra and damped-oscillator verification engine",
               "qdamp"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::size_t> dim;
  std::optional<double> tol;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--dim", dim, "truncation dimension D")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "tolerance override for every check")->check(CLI::PositiveNumber);
  for (Command c : {Command::kVerify, Command::kEvolve, Command::kClassical, Command::kSqueeze}) {
    app.add_subcommand(command_name(c))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "qdamp: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const Command command = parse_command(app.get_subcommands().front()->get_name());
  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (config.command && *config.command != command) {
      throw ConfigError("config command '" + command_name(*config.command) +
                        "' does not match subcommand '" + command_name(command) + "'");
    }
    if (dim) config.dim = *dim;
    if (tol) config.tolerance = *tol;
    if (!out_path.empty()) config.output_path = out_path;
    if (!format.empty()) config.output_format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    validate(config);
  } catch (const ConfigError& e) {
    err << "qdamp: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string payload;
  int code = kExitPass;
  try {
    if (command == Command::kVerify) {
      const auto report = cmd_verify(config);
      if (config.output_format.value_or(OutputFormat::kJson) == OutputFormat::kJson) {
        payload = report.to_json().dump(2) + "\n";
      } else {
        std::string csv = "name,equation,residual,tolerance,margin,status\n";
        for (const auto& r : report.records()) {
          csv += r.name + ",\"" + r.equation + "\"," + format_number(r.residual) + "," +
                 format_number(r.tolerance) + "," + (r.margin ? std::to_string(*r.margin) : "") +
                 "," + to_string(r.status) + "\n";
        }
        payload = csv;
      }
      code = report.all_passed() ? kExitPass : kExitFail;
    } else {
      Table t;
      switch (command) {
        case Command::kEvolve:
          t = cmd_evolve(config);
          break;
        case Command::kClassical:
          t = cmd_classical(config);
          break;
        default:
          t = cmd_squeeze(config);
          break;
      }
      payload = config.output_format.value_or(OutputFormat::kCsv) == OutputFormat::kCsv
                    ? to_csv(t)
                    : to_json(t).dump(2) + "\n";
    }
  } catch (const std::exception& e) {
    err << "qdamp " << command_name(command) << ": " << e.what() << "\n";
    return kExitUsage;
  }

  if (config.output_path.empty()) {
    out << payload;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      err << "qdamp: cannot write '" << config.output_path << "'\n";
      return kExitUsage;
    }
    file << payload;
  }
  return code;
}

}  // namespace qdamp::cli
