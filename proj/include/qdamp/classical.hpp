#pragma once

// Classical damped oscillator m z'' + gamma z' + kappa z = 0, underdamped regime.

#include <stdexcept>
#include <string>
#include <vector>

namespace qdamp::classical {

struct OscillatorParams {
  double m = 1.0;
  double gamma = 0.5;         // damping coefficient, mass / time
  double kappa_spring = 1.0;  // stiffness, mass / time^2
  double z0 = 1.0;
  double v0 = 0.0;
};

class OverdampedError : public std::invalid_argument {
 public:
  OverdampedError(const std::string& what, double discriminant)
      : std::invalid_argument(what), discriminant_(discriminant) {}
  // gamma^2 - 4 m kappa
  double discriminant() const noexcept { return discriminant_; }

 private:
  double discriminant_;
};

// Rejects non-finite values, m <= 0, kappa <= 0 and gamma < 0.
void validate(const OscillatorParams& p);

// Gamma = gamma / 2m.
double damping_rate(const OscillatorParams& p);

// Omega = sqrt(kappa/m - gamma^2/(4 m^2)); throws OverdampedError unless gamma^2 < 4 m kappa.
double shifted_frequency(const OscillatorParams& p);

struct PhasePoint {
  double z;
  double v;
};

// z(t) = e^{-Gamma t} (z0 cos Omega t + ((v0 + Gamma z0)/Omega) sin Omega t) and its derivative.
PhasePoint analytic_solution(const OscillatorParams& p, double t);

// Closed-form second derivative of analytic_solution.
double analytic_acceleration(const OscillatorParams& p, double t);

// m z'' + gamma z' + kappa z evaluated on the closed form.
double ode_residual(const OscillatorParams& p, double t);

// R with z(t) = R e^{-Gamma t} cos(Omega t - phi).
double amplitude(const OscillatorParams& p);

// R e^{-Gamma t}.
double envelope(const OscillatorParams& p, double t);

double energy(const OscillatorParams& p, double z, double v);

struct Sample {
  double t;
  double z;
  double v;
};

// Fixed-step classical RK4 from t = 0 to t = T. Sample k sits at t = k dt; a
// final shorter step lands exactly on T when T is not a multiple of dt.
std::vector<Sample> integrate(const OscillatorParams& p, double dt, double T);

}  // namespace qdamp::classical
