#include "qdamp/dissipative.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdamp/errors.hpp"

namespace qdamp::dissipative {

using fock::cplx;
using fock::FockSpace;
using fock::Matrix;
using fock::Operator;
using fock::StateVector;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_nonnegative(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and nonnegative");
  }
}

Operator kron(const Operator& x, const Operator& y, const FockSpace& target) {
  const Matrix& mx = x.matrix();
  const Matrix& my = y.matrix();
  const auto dx = mx.rows();
  const auto dy = my.rows();
  Matrix out = Matrix::Zero(dx * dy, dx * dy);
  for (Eigen::Index i = 0; i < dx; ++i) {
    for (Eigen::Index j = 0; j < dx; ++j) {
      if (mx(i, j) != cplx(0.0)) out.block(i * dy, j * dy, dy, dy) = mx(i, j) * my;
    }
  }
  return Operator(target, std::move(out));
}

double max_abs(const StateVector& v) {
  return v.amplitudes().size() == 0 ? 0.0 : v.amplitudes().cwiseAbs().maxCoeff();
}

double expectation(const Operator& x, const StateVector& psi) {
  const cplx num = psi.amplitudes().dot(x.matrix() * psi.amplitudes());
  return num.real() / psi.amplitudes().squaredNorm();
}

void add_su11_records(VerificationReport& report, const std::string& prefix,
                      const PairGenerators& j, const TwoModeSpace& space, std::size_t margin,
                      double tol) {
  const std::vector<std::size_t> dims{space.per_mode_dim(), space.per_mode_dim()};
  report.add(prefix + ".j3_jplus", "[J_3, J_+] = J_+",
             space.interior_residual(fock::commutator(j.j_3, j.j_plus), j.j_plus, margin), tol,
             margin, dims);
  report.add(prefix + ".j3_jminus", "[J_3, J_-] = -J_-",
             space.interior_residual(fock::commutator(j.j_3, j.j_minus), -j.j_minus, margin),
             tol, margin, dims);
  report.add(prefix + ".jplus_jminus", "[J_+, J_-] = -2 J_3",
             space.interior_residual(fock::commutator(j.j_plus, j.j_minus),
                                     cplx(-2.0) * j.j_3, margin),
             tol, margin, dims);
}

}  // namespace

void validate_modes(const std::vector<ModeSpec>& modes) {
  if (modes.empty()) throw std::invalid_argument("mode list must not be empty");
  for (const auto& m : modes) {
    require_nonnegative(m.omega, "Omega");
    require_nonnegative(m.gamma, "Gamma");
  }
}

PairedState::PairedState(double gamma_t, std::vector<double> coeffs)
    : gamma_t_(gamma_t), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("PairedState: empty coefficient list");
}

double PairedState::norm_squared() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double PairedState::mean_number() const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    s += static_cast<double>(n) * coeffs_[n] * coeffs_[n];
  }
  return s;
}

double PairedState::tail_bound() const {
  return std::pow(std::tanh(gamma_t_), 2.0 * static_cast<double>(coeffs_.size()));
}

double paired_overlap(const PairedState& a, const PairedState& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a.coeffs()[k] * b.coeffs()[k];
  return s;
}

std::size_t minimal_dim(double gamma_t, double tail) {
  require_nonnegative(gamma_t, "Gamma t");
  if (!(tail > 0.0 && tail < 1.0)) {
    throw std::invalid_argument("minimal_dim: tail must lie in (0, 1)");
  }
  const double x = std::tanh(gamma_t);
  if (x == 0.0) return 1;
  if (x >= 1.0) {
    throw std::invalid_argument("minimal_dim: tanh(Gamma t) rounds to 1, no finite D suffices");
  }
  auto d = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log(tail) / (2.0 * std::log(x)))));
  while (std::pow(x, 2.0 * static_cast<double>(d)) > tail) ++d;
  while (d > 1 && std::pow(x, 2.0 * static_cast<double>(d - 1)) <= tail) --d;
  return d;
}

PairedState ground_state(double gamma, double t, std::size_t dim, std::optional<double> max_tail) {
  require_nonnegative(gamma, "Gamma");
  require_nonnegative(t, "t");
  if (dim == 0 || dim > kMaxPairedDim) {
    throw std::invalid_argument("ground_state: dimension outside [1, 100000]");
  }
  const double gt = gamma * t;
  if (max_tail) {
    const std::size_t need = minimal_dim(gt, *max_tail);
    if (dim < need) {
      std::ostringstream msg;
      msg << "ground_state: D = " << dim << " leaves tail tanh^(2D) above " << *max_tail
          << "; minimal admissible D is " << need;
      throw TailBoundError(msg.str(), need);
    }
  }
  const double x = std::tanh(gt);
  std::vector<double> c(dim);
  double term = 1.0 / std::cosh(gt);
  for (std::size_t n = 0; n < dim; ++n) {
    c[n] = term;
    term *= x;
  }
  return PairedState(gt, std::move(c));
}

double mode_number(double gamma, double t) {
  require_nonnegative(gamma * t, "Gamma t");
  const double s = std::sinh(gamma * t);
  return s * s;
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double vacuum_overlap(const std::vector<ModeSpec>& modes, double t) {
  validate_modes(modes);
  require_nonnegative(t, "t");
  double s = 0.0;
  for (const auto& m : modes) s += log_cosh(m.gamma * t);
  return std::exp(-s);
}

double overlap_two_times(const std::vector<ModeSpec>& modes, double t, double t2) {
  validate_modes(modes);
  require_nonnegative(t, "t");
  require_nonnegative(t2, "t2");
  double s = 0.0;
  for (const auto& m : modes) s += log_cosh(m.gamma * (t - t2));
  return std::exp(-s);
}

double overlap_two_times_series(double gamma, double t, double t2, std::size_t dim) {
  return paired_overlap(ground_state(gamma, t, dim), ground_state(gamma, t2, dim));
}

TwoModeSpace::TwoModeSpace(std::size_t per_mode_dim, std::size_t max_composite)
    : dim_(per_mode_dim),
      composite_([&] {
        if (per_mode_dim == 0) throw std::invalid_argument("TwoModeSpace: dimension must be >= 1");
        if (per_mode_dim * per_mode_dim > max_composite) {
          std::ostringstream msg;
          msg << "TwoModeSpace: D^2 = " << per_mode_dim * per_mode_dim << " exceeds cap "
              << max_composite;
          throw DimensionCapError(msg.str());
        }
        return FockSpace(per_mode_dim * per_mode_dim, max_composite);
      }()) {}

Operator TwoModeSpace::first_lowering() const {
  const FockSpace single(dim_);
  return kron(fock::ladder_ops(single).lowering, Operator::identity(single), composite_);
}

Operator TwoModeSpace::second_lowering() const {
  const FockSpace single(dim_);
  return kron(Operator::identity(single), fock::ladder_ops(single).lowering, composite_);
}

StateVector TwoModeSpace::embed(const PairedState& state) const {
  fock::Vector v = fock::Vector::Zero(static_cast<Eigen::Index>(composite_.dim()));
  const std::size_t n_max = std::min(dim_, state.dim());
  for (std::size_t n = 0; n < n_max; ++n) {
    v(static_cast<Eigen::Index>(index(n, n))) = state.coeffs()[n];
  }
  return StateVector(composite_, std::move(v));
}

double TwoModeSpace::interior_residual(const Operator& x, const Operator& y,
                                       std::size_t margin) const {
  if (!(x.space() == composite_) || !(y.space() == composite_)) {
    throw ShapeError("TwoModeSpace::interior_residual: operators not on this space");
  }
  if (margin >= dim_) {
    throw std::invalid_argument("TwoModeSpace::interior_residual: margin leaves no interior");
  }
  const std::size_t k = dim_ - margin;
  double worst = 0.0;
  for (std::size_t r1 = 0; r1 < k; ++r1) {
    for (std::size_t r2 = 0; r2 < k; ++r2) {
      const auto row = static_cast<Eigen::Index>(index(r1, r2));
      for (std::size_t c1 = 0; c1 < k; ++c1) {
        for (std::size_t c2 = 0; c2 < k; ++c2) {
          const auto col = static_cast<Eigen::Index>(index(c1, c2));
          worst = std::max(worst, std::abs(x.matrix()(row, col) - y.matrix()(row, col)));
        }
      }
    }
  }
  return worst;
}

ModeOperators evolved_ops(const TwoModeSpace& space, double gamma, double t) {
  require_nonnegative(gamma, "Gamma");
  require_nonnegative(t, "t");
  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const cplx ch = std::cosh(gamma * t);
  const cplx sh = std::sinh(gamma * t);
  Operator a_t = ch * a - sh * b.adjoint();
  Operator b_t = -sh * a.adjoint() + ch * b;
  Operator a_t_dag = a_t.adjoint();
  Operator b_t_dag = b_t.adjoint();
  return {std::move(a_t), std::move(b_t), std::move(a_t_dag), std::move(b_t_dag)};
}

VerificationReport verify_evolved_ops(const TwoModeSpace& space, double gamma, double t,
                                      std::size_t margin) {
  const std::size_t d = space.per_mode_dim();
  const std::vector<std::size_t> dims{d, d};
  const auto ops = evolved_ops(space, gamma, t);
  const Operator ident = Operator::identity(space.composite());
  const Operator zero = Operator::zero(space.composite());
  const PairedState gs = ground_state(gamma, t, d);
  const StateVector psi = space.embed(gs);

  std::ostringstream note;
  note << "tail tanh^(2D) = " << gs.tail_bound();

  VerificationReport r;
  constexpr double ccr_tol = 1e-8;
  r.add("evolved.ccr_a", "[A(t), A(t)^dagger] = 1",
        space.interior_residual(fock::commutator(ops.a, ops.a_dag), ident, margin), ccr_tol,
        margin, dims);
  r.add("evolved.ccr_b", "[B(t), B(t)^dagger] = 1",
        space.interior_residual(fock::commutator(ops.b, ops.b_dag), ident, margin), ccr_tol,
        margin, dims);
  r.add("evolved.ccr_ab_dag", "[A(t), B(t)^dagger] = 0",
        space.interior_residual(fock::commutator(ops.a, ops.b_dag), zero, margin), ccr_tol,
        margin, dims);
  r.add("evolved.ccr_ab", "[A(t), B(t)] = 0",
        space.interior_residual(fock::commutator(ops.a, ops.b), zero, margin), ccr_tol, margin,
        dims);

  constexpr double vac_tol = 1e-6;
  r.add("evolved.annihilate_a", "A(t)|0(t)> = 0", (ops.a * psi).norm(), vac_tol, std::nullopt,
        dims, note.str());
  r.add("evolved.annihilate_b", "B(t)|0(t)> = 0", (ops.b * psi).norm(), vac_tol, std::nullopt,
        dims, note.str());

  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const Operator n_diff = a.adjoint() * a - b.adjoint() * b;
  r.add("evolved.number_difference", "<0(t)|N_A - N_B|0(t)> = 0",
        std::abs(expectation(n_diff, psi)), 1e-10, std::nullopt, dims);
  return r;
}

VerificationReport hole_relations(const TwoModeSpace& space, double gamma, double t) {
  const std::size_t d = space.per_mode_dim();
  const std::vector<std::size_t> dims{d, d};
  const auto ops = evolved_ops(space, gamma, t);
  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const PairedState gs = ground_state(gamma, t, d);
  const StateVector psi = space.embed(gs);
  const double gt = gamma * t;
  const cplx inv_ch = 1.0 / std::cosh(gt);

  constexpr double tol = 1e-6;
  VerificationReport r;
  const StateVector a_dag_t_psi = ops.a_dag * psi;
  const StateVector b_dag_t_psi = ops.b_dag * psi;
  r.add("hole.a_dag_cosh", "A^dagger(t)|0(t)> = A^dagger|0(t)> / cosh(Gamma t)",
        max_abs(a_dag_t_psi - inv_ch * (a.adjoint() * psi)), tol, std::nullopt, dims);
  r.add("hole.b_dag_cosh", "B^dagger(t)|0(t)> = B^dagger|0(t)> / cosh(Gamma t)",
        max_abs(b_dag_t_psi - inv_ch * (b.adjoint() * psi)), tol, std::nullopt, dims);

  if (gt == 0.0) {
    const std::string why = "Gamma t = 0: no condensate, 1/sinh(Gamma t) undefined";
    r.add_skipped("hole.a_dag_sinh", "A^dagger(t)|0(t)> = B|0(t)> / sinh(Gamma t)", dims, why);
    r.add_skipped("hole.b_dag_sinh", "B^dagger(t)|0(t)> = A|0(t)> / sinh(Gamma t)", dims, why);
    r.add_skipped("hole.norm_ratio", "|A^dagger(t)|0(t)>| / |B|0(t)>| = 1 / sinh(Gamma t)", dims,
                  why);
    return r;
  }
  const double sh = std::sinh(gt);
  const cplx inv_sh = 1.0 / sh;
  r.add("hole.a_dag_sinh", "A^dagger(t)|0(t)> = B|0(t)> / sinh(Gamma t)",
        max_abs(a_dag_t_psi - inv_sh * (b * psi)), tol, std::nullopt, dims);
  r.add("hole.b_dag_sinh", "B^dagger(t)|0(t)> = A|0(t)> / sinh(Gamma t)",
        max_abs(b_dag_t_psi - inv_sh * (a * psi)), tol, std::nullopt, dims);
  const double ratio = a_dag_t_psi.norm() / (b * psi).norm();
  r.add("hole.norm_ratio", "|A^dagger(t)|0(t)>| / |B|0(t)>| = 1 / sinh(Gamma t)",
        std::abs(ratio - 1.0 / sh), tol, std::nullopt, dims);
  return r;
}

CanonicalPair canonical_map(const TwoModeSpace& space) {
  const Operator alpha = space.first_lowering();
  const Operator beta = space.second_lowering();
  return {cplx(kInvSqrt2) * (alpha + beta), cplx(kInvSqrt2) * (alpha - beta)};
}

PairGenerators pair_generators(const Operator& a, const Operator& b) {
  const Operator ident = Operator::identity(a.space());
  return {a.adjoint() * b.adjoint(), a * b,
          cplx(0.5) * (a.adjoint() * a + b.adjoint() * b + ident)};
}

QuadraticFit quadratic_identity(const TwoModeSpace& space, std::size_t margin) {
  const Operator alpha = space.first_lowering();
  const Operator beta = space.second_lowering();
  const auto [a, b] = canonical_map(space);
  const auto j = pair_generators(a, b);
  const Operator lhs = double_squeeze_generator(alpha, beta);
  const Operator rhs = j.j_plus - j.j_minus;

  if (margin >= space.per_mode_dim()) {
    throw std::invalid_argument("quadratic_identity: margin leaves no interior");
  }
  const std::size_t k = space.per_mode_dim() - margin;
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t r1 = 0; r1 < k; ++r1)
    for (std::size_t r2 = 0; r2 < k; ++r2)
      for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = 0; c2 < k; ++c2) {
          const auto row = static_cast<Eigen::Index>(space.index(r1, r2));
          const auto col = static_cast<Eigen::Index>(space.index(c1, c2));
          num += std::conj(rhs.matrix()(row, col)) * lhs.matrix()(row, col);
          den += std::norm(rhs.matrix()(row, col));
        }
  const double c = den > 0.0 ? num.real() / den : 0.0;
  return {c, space.interior_residual(lhs, cplx(c) * rhs, margin),
          space.interior_residual(lhs, cplx(-2.0) * rhs, margin),
          space.interior_residual(lhs, cplx(-1.0) * rhs, margin)};
}

VerificationReport verify_canonical_map(const TwoModeSpace& space, std::size_t margin) {
  const std::size_t d = space.per_mode_dim();
  const std::vector<std::size_t> dims{d, d};
  const auto [a, b] = canonical_map(space);
  const Operator ident = Operator::identity(space.composite());
  const Operator zero = Operator::zero(space.composite());
  constexpr double tol = 1e-12;

  VerificationReport r;
  r.add("canonical.ccr_a", "[A, A^dagger] = 1",
        space.interior_residual(fock::commutator(a, a.adjoint()), ident, margin), tol, margin,
        dims);
  r.add("canonical.ccr_b", "[B, B^dagger] = 1",
        space.interior_residual(fock::commutator(b, b.adjoint()), ident, margin), tol, margin,
        dims);
  r.add("canonical.ccr_ab_dag", "[A, B^dagger] = 0",
        space.interior_residual(fock::commutator(a, b.adjoint()), zero, margin), tol, margin,
        dims);
  r.add("canonical.ccr_ab", "[A, B] = 0",
        space.interior_residual(fock::commutator(a, b), zero, margin), tol, margin, dims);

  const QuadraticFit fit = quadratic_identity(space, margin);
  std::ostringstream note;
  note << "fitted constant " << fit.constant << "; residual with constant -1 is "
       << fit.residual_minus_one;
  r.add("canonical.quadratic_constant",
        "(alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2) = c (J_+ - J_-), c = -2",
        std::abs(fit.constant + 2.0), 1e-10, margin, dims, note.str());
  r.add("canonical.quadratic_identity",
        "(alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2) = -2 (A^dagger B^dagger - A B)",
        fit.residual_minus_two, tol, margin, dims);

  add_su11_records(r, "canonical.su11", pair_generators(a, b), space, margin, 1e-10);
  return r;
}

VerificationReport su11_two_mode(const TwoModeSpace& space, std::size_t margin) {
  VerificationReport r;
  add_su11_records(r, "su11.pair",
                   pair_generators(space.first_lowering(), space.second_lowering()), space,
                   margin, 1e-10);
  return r;
}

Operator double_squeeze_generator(const Operator& alpha, const Operator& beta) {
  const Operator ad = alpha.adjoint();
  const Operator bd = beta.adjoint();
  return (alpha * alpha - ad * ad) - (beta * beta - bd * bd);
}

Operator double_squeeze(const TwoModeSpace& space, double zeta) {
  if (!std::isfinite(zeta) || std::abs(zeta) > 2.0) {
    throw std::invalid_argument("double_squeeze: |zeta| must not exceed 2");
  }
  return fock::matrix_exponential(
      cplx(zeta / 2) * double_squeeze_generator(space.first_lowering(), space.second_lowering()));
}

std::size_t double_squeeze_state_margin(double zeta) {
  // Four quadratic terms with coefficient zeta/2; each A^dagger B^dagger step
  // applies one ladder operator per factor, two in total.
  return fock::policy_margin(2.0 * std::abs(zeta), 2);
}

VerificationReport verify_double_squeeze(const TwoModeSpace& space, double zeta,
                                         std::size_t margin) {
  const std::size_t d = space.per_mode_dim();
  const std::vector<std::size_t> dims{d, d};
  VerificationReport r;

  // (i) alpha, beta as tensor factors; A, B from the canonical map.
  const Operator u = double_squeeze(space, zeta);
  const auto [a_can, b_can] = canonical_map(space);
  const auto j = pair_generators(a_can, b_can);
  const Operator u_pair = fock::matrix_exponential(cplx(-zeta) * (j.j_plus - j.j_minus));
  r.add("double_squeeze.group_element",
        "exp((zeta/2)[(alpha^2 - alpha^dagger^2) - (beta^2 - beta^dagger^2)]) = "
        "exp(-zeta (J_+ - J_-))",
        space.interior_residual(u, u_pair, margin), 1e-8, margin, dims);

  // (ii) A, B as tensor factors, alpha = (A + B)/sqrt2, beta = (A - B)/sqrt2.
  const std::size_t sm = double_squeeze_state_margin(zeta);
  const std::string amp_eq = "<n,n|U(zeta)|0,0> = sech(zeta) (-tanh zeta)^n";
  const std::string gs_eq = "U(zeta)^dagger |0,0> = |0(t)>, Gamma t = zeta";
  if (sm >= d) {
    std::ostringstream why;
    why << "state margin " << sm << " leaves no paired levels at D = " << d;
    r.add_skipped("double_squeeze.vacuum_amplitudes", amp_eq, dims, why.str());
    r.add_skipped("double_squeeze.ground_state", gs_eq, dims, why.str());
    return r;
  }
  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const Operator alpha = cplx(kInvSqrt2) * (a + b);
  const Operator beta = cplx(kInvSqrt2) * (a - b);
  const Operator u_ab =
      fock::matrix_exponential(cplx(zeta / 2) * double_squeeze_generator(alpha, beta));
  const StateVector vac = StateVector::basis(space.composite(), 0);
  const StateVector fwd = u_ab * vac;
  const StateVector back = u_ab.adjoint() * vac;

  const std::size_t k = d - sm;
  const double sech = 1.0 / std::cosh(zeta);
  const double th = std::tanh(zeta);
  const std::vector<double> expected_gs =
      zeta >= 0.0 ? ground_state(1.0, zeta, k).coeffs() : [&] {
        std::vector<double> c(k);
        for (std::size_t n = 0; n < k; ++n) c[n] = sech * std::pow(th, static_cast<double>(n));
        return c;
      }();

  double res_fwd = 0.0;
  double res_back = 0.0;
  for (std::size_t n1 = 0; n1 < k; ++n1) {
    for (std::size_t n2 = 0; n2 < k; ++n2) {
      const std::size_t i = space.index(n1, n2);
      cplx want_fwd = 0.0;
      cplx want_back = 0.0;
      if (n1 == n2) {
        want_fwd = sech * std::pow(-th, static_cast<double>(n1));
        want_back = expected_gs[n1];
      }
      res_fwd = std::max(res_fwd, std::abs(fwd(i) - want_fwd));
      res_back = std::max(res_back, std::abs(back(i) - want_back));
    }
  }
  r.add("double_squeeze.vacuum_amplitudes", amp_eq, res_fwd, 1e-6, sm, dims);
  r.add("double_squeeze.ground_state", gs_eq, res_back, 1e-6, sm, dims);
  return r;
}

double h0_hi_commute(const TwoModeSpace& space, double omega, double gamma, std::size_t margin) {
  const Operator a = space.first_lowering();
  const Operator b = space.second_lowering();
  const Operator h0 = cplx(omega) * (a.adjoint() * a - b.adjoint() * b);
  const Operator hi = cplx(0.0, gamma) * (a.adjoint() * b.adjoint() - a * b);
  return space.interior_residual(fock::commutator(h0, hi), Operator::zero(space.composite()),
                                 margin);
}

double tfd_theta(double beta, double omega) {
  const double x = beta * omega;
  if (!(x > 0.0) || std::isnan(x)) {
    throw std::invalid_argument("tfd_theta: requires beta * Omega > 0");
  }
  return std::atanh(std::exp(-x / 2.0));
}

double thermal_number(double beta, double omega) {
  const double x = beta * omega;
  if (!(x > 0.0) || std::isnan(x)) {
    throw std::invalid_argument("thermal_number: requires beta * Omega > 0");
  }
  return 1.0 / std::expm1(x);
}

}  // namespace qdamp::dissipative
