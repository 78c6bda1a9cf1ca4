#include "qdamp/squeeze.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdamp::squeeze {

using fock::cplx;
using fock::FockSpace;
using fock::Operator;

namespace {

void require_dim(const FockSpace& space) {
  if (space.dim() < kMinDim) {
    std::ostringstream msg;
    msg << "squeeze: dimension " << space.dim() << " below minimum " << kMinDim
        << " (the generator couples n to n +/- 2)";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

SqueezeParam::SqueezeParam(double zeta) : zeta_(zeta) {
  if (!std::isfinite(zeta) || std::abs(zeta) > kMaxAbsZeta) {
    throw std::invalid_argument("SqueezeParam: zeta outside the operating range |zeta| <= 10");
  }
}

Operator squeeze_generator(const FockSpace& space) {
  const auto [a, ad] = fock::ladder_ops(space);
  return a * a - ad * ad;
}

Operator scale_generator(const FockSpace& space) {
  return cplx(0.5) * (squeeze_generator(space) - Operator::identity(space));
}

Operator squeeze_operator(const FockSpace& space, double zeta) {
  require_dim(space);
  const SqueezeParam p(zeta);
  return fock::matrix_exponential(cplx(p.zeta() / 2) * squeeze_generator(space));
}

fock::StateVector squeezed_vacuum(const FockSpace& space, double zeta) {
  return squeeze_operator(space, zeta) * fock::StateVector::basis(space, 0);
}

double dilation_vs_squeeze(const FockSpace& space, double zeta, std::size_t margin) {
  require_dim(space);
  const SqueezeParam p(zeta);
  const Operator dilation = fock::matrix_exponential(cplx(p.zeta()) * scale_generator(space));
  return fock::interior_residual(cplx(std::sqrt(p.q())) * dilation,
                                 squeeze_operator(space, zeta), margin);
}

std::size_t working_dim(std::size_t dim, double zeta) {
  const double spread = std::expm1(2.0 * std::abs(zeta));
  const double pad = std::ceil(1.5 * static_cast<double>(dim) * spread) + 48.0;
  std::size_t w = dim + static_cast<std::size_t>(pad);
  w = (w + 15) / 16 * 16;
  if (w > fock::kWorkingMaxDim) {
    std::ostringstream msg;
    msg << "working_dim: zeta = " << zeta << " at D = " << dim << " needs " << w
        << " levels, cap is " << fock::kWorkingMaxDim;
    throw DimensionCapError(msg.str());
  }
  return w;
}

std::size_t bogoliubov_margin(double zeta) {
  return static_cast<std::size_t>(std::ceil(4.0 * std::abs(zeta))) + 4;
}

double bogoliubov_residual(const FockSpace& space, double zeta, std::size_t margin) {
  require_dim(space);
  const SqueezeParam p(zeta);
  if (margin >= space.dim()) {
    throw std::invalid_argument("bogoliubov_residual: margin leaves no interior");
  }
  const FockSpace work(working_dim(space.dim(), zeta), fock::kWorkingMaxDim);
  const auto [a, ad] = fock::ladder_ops(work);
  const Operator gen = cplx(p.zeta() / 2) * (a * a - ad * ad);
  const Operator s = fock::matrix_exponential(gen);
  const Operator s_inv = fock::matrix_exponential(-gen);
  const auto [u, v] = bogoliubov_coefficients(p.zeta());
  const Operator target = cplx(u) * a - cplx(v) * ad;
  return fock::interior_residual(s_inv * a * s, target, work.dim() - space.dim() + margin);
}

BogoliubovCoefficients bogoliubov_coefficients(double zeta) {
  return {std::cosh(zeta), std::sinh(zeta)};
}

double bogoliubov_ccr_residual(const FockSpace& space, double zeta, std::size_t margin) {
  const auto [a, ad] = fock::ladder_ops(space);
  const auto [u, v] = bogoliubov_coefficients(zeta);
  const Operator az = cplx(u) * a - cplx(v) * ad;
  return fock::interior_residual(fock::commutator(az, az.adjoint()), Operator::identity(space),
                                 margin);
}

Su11Generators su11_generators(const FockSpace& space) {
  const auto [a, ad] = fock::ladder_ops(space);
  const Operator ident = Operator::identity(space);
  return {cplx(0.5) * (a * a), cplx(0.5) * (ad * ad),
          cplx(0.5) * (fock::number_op(space) + cplx(0.5) * ident)};
}

VerificationReport su11_single_mode(const FockSpace& space, std::size_t margin) {
  require_dim(space);
  const auto [km, kp, kz] = su11_generators(space);
  const std::vector<std::size_t> dims{space.dim()};
  constexpr double tol = 1e-12;
  VerificationReport report;
  report.add("su11.single.kz_kplus", "[K_z, K_+] = K_+",
             fock::interior_residual(fock::commutator(kz, kp), kp, margin), tol, margin, dims);
  report.add("su11.single.kz_kminus", "[K_z, K_-] = -K_-",
             fock::interior_residual(fock::commutator(kz, km), -km, margin), tol, margin, dims);
  report.add("su11.single.kplus_kminus", "[K_+, K_-] = -2 K_z",
             fock::interior_residual(fock::commutator(kp, km), cplx(-2.0) * kz, margin), tol,
             margin, dims);

  // H / (2 hbar omega) with H = hbar omega (alpha^dagger alpha + 1/2), hbar omega = 1.
  const auto [a, ad] = fock::ladder_ops(space);
  const Operator h = ad * a + cplx(0.5) * Operator::identity(space);
  report.add("su11.single.kz_hamiltonian", "K_z = H / (2 hbar omega)",
             fock::interior_residual(kz, cplx(0.5) * h, 0), tol, std::size_t{0}, dims);
  report.add("su11.single.vacuum_kz", "<0|K_z|0> = 1/4", std::abs(kz(0, 0) - cplx(0.25)), tol,
             std::nullopt, dims);
  return report;
}

std::complex<double> damped_amplitude(std::complex<double> z0, double gamma, double t) {
  if (!(t >= 0.0) || !(gamma >= 0.0)) {
    throw std::invalid_argument("damped_amplitude: requires t >= 0 and gamma >= 0");
  }
  return z0 * std::exp(-gamma * t);
}

}  // namespace qdamp::squeeze
