#include "qdamp/classical.hpp"

#include <cmath>
#include <sstream>

#include "qdamp/squeeze.hpp"

namespace qdamp::classical {

namespace {

struct Trig {
  double decay;  // e^{-Gamma t}
  double w;      // z0 cos + B sin
  double dw;     // d/dt of w
};

Trig closed_form_parts(const OscillatorParams& p, double t) {
  const double g = damping_rate(p);
  const double om = shifted_frequency(p);
  const double b = (p.v0 + g * p.z0) / om;
  const double c = std::cos(om * t);
  const double s = std::sin(om * t);
  return {std::exp(-g * t), p.z0 * c + b * s, om * (-p.z0 * s + b * c)};
}

PhasePoint rhs(const OscillatorParams& p, const PhasePoint& y) {
  return {y.v, -(p.gamma * y.v + p.kappa_spring * y.z) / p.m};
}

}  // namespace

void validate(const OscillatorParams& p) {
  if (!std::isfinite(p.m) || !std::isfinite(p.gamma) || !std::isfinite(p.kappa_spring) ||
      !std::isfinite(p.z0) || !std::isfinite(p.v0)) {
    throw std::invalid_argument("oscillator parameters must be finite");
  }
  if (p.m <= 0.0) throw std::invalid_argument("mass must be positive");
  if (p.kappa_spring <= 0.0) throw std::invalid_argument("stiffness must be positive");
  if (p.gamma < 0.0) throw std::invalid_argument("damping coefficient must be nonnegative");
}

double damping_rate(const OscillatorParams& p) {
  validate(p);
  return p.gamma / (2.0 * p.m);
}

double shifted_frequency(const OscillatorParams& p) {
  validate(p);
  const double disc = p.gamma * p.gamma - 4.0 * p.m * p.kappa_spring;
  if (disc >= 0.0) {
    std::ostringstream msg;
    msg << "shifted_frequency: not underdamped, gamma^2 - 4 m kappa = " << disc;
    throw OverdampedError(msg.str(), disc);
  }
  return std::sqrt(p.kappa_spring / p.m - p.gamma * p.gamma / (4.0 * p.m * p.m));
}

PhasePoint analytic_solution(const OscillatorParams& p, double t) {
  const double g = damping_rate(p);
  const Trig f = closed_form_parts(p, t);
  return {f.decay * f.w, f.decay * (f.dw - g * f.w)};
}

double analytic_acceleration(const OscillatorParams& p, double t) {
  const double g = damping_rate(p);
  const double om = shifted_frequency(p);
  const Trig f = closed_form_parts(p, t);
  // w'' = -Omega^2 w
  return f.decay * ((g * g - om * om) * f.w - 2.0 * g * f.dw);
}

double ode_residual(const OscillatorParams& p, double t) {
  const PhasePoint y = analytic_solution(p, t);
  return p.m * analytic_acceleration(p, t) + p.gamma * y.v + p.kappa_spring * y.z;
}

double amplitude(const OscillatorParams& p) {
  const double g = damping_rate(p);
  const double om = shifted_frequency(p);
  return std::hypot(p.z0, (p.v0 + g * p.z0) / om);
}

double envelope(const OscillatorParams& p, double t) {
  return squeeze::damped_amplitude(amplitude(p), damping_rate(p), t).real();
}

double energy(const OscillatorParams& p, double z, double v) {
  return 0.5 * p.m * v * v + 0.5 * p.kappa_spring * z * z;
}

std::vector<Sample> integrate(const OscillatorParams& p, double dt, double T) {
  validate(p);
  if (!std::isfinite(dt) || !std::isfinite(T) || dt <= 0.0 || T < dt) {
    throw std::invalid_argument("integrate: requires dt > 0 and T >= dt");
  }
  const double ratio = T / dt;
  auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
    steps = static_cast<std::size_t>(std::ceil(ratio));
  }
  std::vector<Sample> out;
  out.reserve(steps + 1);
  PhasePoint y{p.z0, p.v0};
  out.push_back({0.0, y.z, y.v});
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double t1 = (k + 1 == steps) ? T : static_cast<double>(k + 1) * dt;
    const double h = t1 - t0;
    const PhasePoint k1 = rhs(p, y);
    const PhasePoint k2 = rhs(p, {y.z + 0.5 * h * k1.z, y.v + 0.5 * h * k1.v});
    const PhasePoint k3 = rhs(p, {y.z + 0.5 * h * k2.z, y.v + 0.5 * h * k2.v});
    const PhasePoint k4 = rhs(p, {y.z + h * k3.z, y.v + h * k3.v});
    y.z += h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    out.push_back({t1, y.z, y.v});
  }
  return out;
}

}  // namespace qdamp::classical
