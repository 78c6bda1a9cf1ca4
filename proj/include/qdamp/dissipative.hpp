#pragma once

// Doubled-mode description of the damped oscillator.
//
// Each mode kappa carries a pair (A, B) with
//   H_0 = Omega (A^dagger A - B^dagger B),  H_I = i Gamma (A^dagger B^dagger - A B)
// (hbar = 1). The vacuum |0(t)> = exp(Gamma t (J_+ - J_-))|0,0> lives in the
// paired subspace span{|n,n>}, so two backends are provided:
//   - PairedState: coefficients c_n = sech(Gamma t) tanh^n(Gamma t), cheap up to D ~ 1e4;
//   - TwoModeSpace: dense D^2 tensor space (D^2 <= 256), the brute-force oracle.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qdamp/fock.hpp"
#include "qdamp/report.hpp"

namespace qdamp::dissipative {

inline constexpr std::size_t kMaxCompositeDim = 256;
inline constexpr std::size_t kMaxPairedDim = 100000;

struct ModeSpec {
  std::string kappa;
  double omega = 0.0;  // rad / time
  double gamma = 0.0;  // 1 / time
};

// Throws std::invalid_argument for an empty list, negative or non-finite entries.
void validate_modes(const std::vector<ModeSpec>& modes);

class PairedState {
 public:
  PairedState(double gamma_t, std::vector<double> coeffs);

  double gamma_t() const noexcept { return gamma_t_; }
  std::size_t dim() const noexcept { return coeffs_.size(); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  double norm_squared() const;
  // sum n c_n^2 = <N_A> = <N_B>
  double mean_number() const;
  // tanh(Gamma t)^(2D): weight of the discarded geometric tail.
  double tail_bound() const;

 private:
  double gamma_t_;
  std::vector<double> coeffs_;
};

double paired_overlap(const PairedState& a, const PairedState& b);

// Smallest D with tanh(gamma_t)^(2D) <= tail.
std::size_t minimal_dim(double gamma_t, double tail);

// c_n = sech(gamma t) tanh^n(gamma t), n < dim. When max_tail is given and
// tanh^(2 dim) exceeds it, throws TailBoundError carrying minimal_dim.
PairedState ground_state(double gamma, double t, std::size_t dim,
                         std::optional<double> max_tail = std::nullopt);

// sinh^2(gamma t).
double mode_number(double gamma, double t);

// ln cosh x without overflow for large |x|.
double log_cosh(double x);

// exp(-sum_kappa ln cosh(Gamma_kappa t)).
double vacuum_overlap(const std::vector<ModeSpec>& modes, double t);

// prod_kappa 1 / cosh(Gamma_kappa (t - t2)).
double overlap_two_times(const std::vector<ModeSpec>& modes, double t, double t2);

// Truncated single-mode sum sum_n c_n(t) c_n(t2) at dimension D.
double overlap_two_times_series(double gamma, double t, double t2, std::size_t dim);

// Dense tensor product of two D-level modes; composite index i = n1 * D + n2.
class TwoModeSpace {
 public:
  explicit TwoModeSpace(std::size_t per_mode_dim, std::size_t max_composite = kMaxCompositeDim);

  std::size_t per_mode_dim() const noexcept { return dim_; }
  const fock::FockSpace& composite() const noexcept { return composite_; }
  std::size_t index(std::size_t n1, std::size_t n2) const { return n1 * dim_ + n2; }

  // Lowering operator of the first / second tensor factor.
  fock::Operator first_lowering() const;
  fock::Operator second_lowering() const;

  // sum_n c_n |n, n> for n < min(D, state.dim()).
  fock::StateVector embed(const PairedState& state) const;

  // Max-abs difference over composite indices whose factor levels are both
  // below D - margin.
  double interior_residual(const fock::Operator& x, const fock::Operator& y,
                           std::size_t margin) const;

 private:
  std::size_t dim_;
  fock::FockSpace composite_;
};

struct ModeOperators {
  fock::Operator a;
  fock::Operator b;
  fock::Operator a_dag;
  fock::Operator b_dag;
};

// A(t) = A cosh(Gamma t) - B^dagger sinh(Gamma t), B(t) = -A^dagger sinh(Gamma t) + B cosh(Gamma t),
// with A, B the first and second tensor factors.
ModeOperators evolved_ops(const TwoModeSpace& space, double gamma, double t);

// ccr of A(t), B(t) on the interior block; A(t)|0(t)> = 0 = B(t)|0(t)>;
// <0(t)|N_A - N_B|0(t)> = 0.
VerificationReport verify_evolved_ops(const TwoModeSpace& space, double gamma, double t,
                                      std::size_t margin);

// A^dagger(t)|0(t)> = A^dagger|0(t)> / cosh = B|0(t)> / sinh and the B counterpart.
// At Gamma t = 0 the 1/sinh relations are reported as skipped.
VerificationReport hole_relations(const TwoModeSpace& space, double gamma, double t);

struct CanonicalPair {
  fock::Operator a;
  fock::Operator b;
};

// A = (alpha + beta)/sqrt2, B = (alpha - beta)/sqrt2 with alpha on the first
// factor and beta on the second.
CanonicalPair canonical_map(const TwoModeSpace& space);

struct PairGenerators {
  fock::Operator j_plus;   // A^dagger B^dagger
  fock::Operator j_minus;  // A B
  fock::Operator j_3;      // (A^dagger A + B^dagger B + 1) / 2
};
PairGenerators pair_generators(const fock::Operator& a, const fock::Operator& b);

struct QuadraticFit {
  // Least-squares c in (alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2) = c (J_+ - J_-).
  double constant;
  double residual_fitted;
  double residual_minus_two;
  double residual_minus_one;
};
QuadraticFit quadratic_identity(const TwoModeSpace& space, std::size_t margin);

VerificationReport verify_canonical_map(const TwoModeSpace& space, std::size_t margin);

// [J_3, J_+-] = +-J_+-, [J_+, J_-] = -2 J_3 for A, B the tensor factors.
VerificationReport su11_two_mode(const TwoModeSpace& space, std::size_t margin);

// (alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2) for a commuting pair.
fock::Operator double_squeeze_generator(const fock::Operator& alpha, const fock::Operator& beta);

// U(zeta) = exp((zeta/2)[(alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2)]),
// alpha and beta the tensor factors.
fock::Operator double_squeeze(const TwoModeSpace& space, double zeta);

// Margin used by verify_double_squeeze for paired amplitudes.
std::size_t double_squeeze_state_margin(double zeta);

// (i) U(zeta) = exp(-zeta (J_+ - J_-)) on the interior block;
// (ii) in the realization where A, B are the tensor factors,
//      <n,n|U(zeta)|0,0> = sech(zeta) (-tanh zeta)^n and
//      U(zeta)^dagger |0,0> = |0(t)> at Gamma t = zeta, compared on n < D - state margin.
VerificationReport verify_double_squeeze(const TwoModeSpace& space, double zeta,
                                         std::size_t margin);

// interior residual of [H_0, H_I] against zero.
double h0_hi_commute(const TwoModeSpace& space, double omega, double gamma,
                     std::size_t margin = 2);

// Conventional bosonic thermal angle: theta = artanh(exp(-beta Omega / 2)).
double tfd_theta(double beta, double omega);
// sinh^2(theta) = 1 / (exp(beta Omega) - 1).
double thermal_number(double beta, double omega);

}  // namespace qdamp::dissipative
