#pragma once

// Single-mode squeezing: S(zeta) = exp((zeta/2)(alpha^2 - alpha^dagger^2)) with
// alpha the truncated lowering operator. Positive zeta contracts the position
// quadrature: S^-1 alpha S = alpha cosh(zeta) - alpha^dagger sinh(zeta).

#include <cmath>
#include <complex>
#include <cstddef>

#include "qdamp/fock.hpp"
#include "qdamp/report.hpp"

namespace qdamp::squeeze {

inline constexpr double kMaxAbsZeta = 10.0;
inline constexpr std::size_t kMinDim = 4;

class SqueezeParam {
 public:
  explicit SqueezeParam(double zeta);

  double zeta() const noexcept { return zeta_; }
  double q() const { return std::exp(zeta_); }

 private:
  double zeta_;
};

// alpha^2 - alpha^dagger^2.
fock::Operator squeeze_generator(const fock::FockSpace& space);

// G = (alpha^2 - alpha^dagger^2 - I) / 2, so that 2 z d/dz acts as 2G.
fock::Operator scale_generator(const fock::FockSpace& space);

// Throws std::invalid_argument when D < 4; ToleranceError from the exponential.
fock::Operator squeeze_operator(const fock::FockSpace& space, double zeta);

// S(zeta)|0>.
fock::StateVector squeezed_vacuum(const fock::FockSpace& space, double zeta);

// interior_residual(sqrt(q) exp(zeta G), S(zeta), margin).
double dilation_vs_squeeze(const fock::FockSpace& space, double zeta, std::size_t margin);

// Padded dimension used when a conjugation by S(zeta) must be accurate on the
// D x D block. Squeezing by zeta spreads level n over ~n e^{2|zeta|} levels,
// so the pad grows like D (e^{2|zeta|} - 1). Throws DimensionCapError past
// fock::kWorkingMaxDim.
std::size_t working_dim(std::size_t dim, double zeta);

// interior_residual(S^-1 alpha S, alpha cosh zeta - alpha^dagger sinh zeta, margin),
// with the conjugation carried out in working_dim(D, zeta) levels and compared on
// the leading D - margin levels.
double bogoliubov_residual(const fock::FockSpace& space, double zeta, std::size_t margin);

// Smallest margin accepted by bogoliubov_residual for this zeta.
std::size_t bogoliubov_margin(double zeta);

struct BogoliubovCoefficients {
  double u;  // cosh zeta
  double v;  // sinh zeta
};
BogoliubovCoefficients bogoliubov_coefficients(double zeta);

// interior_residual([alpha(zeta), alpha(zeta)^dagger], I, margin).
double bogoliubov_ccr_residual(const fock::FockSpace& space, double zeta, std::size_t margin);

// K_- = alpha^2/2, K_+ = alpha^dagger^2/2, K_z = (N + 1/2)/2.
struct Su11Generators {
  fock::Operator k_minus;
  fock::Operator k_plus;
  fock::Operator k_z;
};
Su11Generators su11_generators(const fock::FockSpace& space);

VerificationReport su11_single_mode(const fock::FockSpace& space, std::size_t margin);

// z0 exp(-gamma t); gamma is the damping rate gamma/2m.
std::complex<double> damped_amplitude(std::complex<double> z0, double gamma, double t);

}  // namespace qdamp::squeeze
