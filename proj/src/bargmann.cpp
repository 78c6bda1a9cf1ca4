#include "qdamp/bargmann.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qdamp::bargmann {

namespace {

constexpr mp_bitcnt_t kBoundaryPrecision = 256;

mpq_class rational_pow(const mpq_class& base, std::size_t exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

mpf_class sqrt_factorial(std::size_t n) {
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  mpf_class f(fact, kBoundaryPrecision);
  return sqrt(f);
}

}  // namespace

QParam::QParam(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ <= 0) {
    throw std::invalid_argument("QParam: q must be a positive rational");
  }
}

QParam QParam::parse(std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("QParam: cannot parse '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("QParam: zero denominator");
  }
  return QParam(q);
}

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

Polynomial Polynomial::monomial(std::size_t n, const mpq_class& coeff) {
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> Polynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

mpq_class Polynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

mpq_class Polynomial::evaluate(const mpq_class& z) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Polynomial Polynomial::times_z() const {
  if (is_zero()) return {};
  std::vector<mpq_class> c;
  c.reserve(coeffs_.size() + 1);
  c.emplace_back(0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    c[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  }
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coeffs_[k].get_str() << ")";
    if (k == 1) out << "z";
    if (k > 1) out << "z^" << k;
  }
  return out.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + mpq_class(-1) * b;
}

Polynomial operator*(const mpq_class& s, const Polynomial& a) {
  std::vector<mpq_class> c(a.coeffs_);
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

mpq_class q_number(std::size_t n, const QParam& q) {
  if (q.is_classical()) return mpq_class(static_cast<unsigned long>(n));
  mpq_class out = (rational_pow(q.value(), n) - 1) / (q.value() - 1);
  out.canonicalize();
  return out;
}

Polynomial q_derivative(const Polynomial& f, const QParam& q) {
  const auto& p = f.coeffs();
  if (p.size() <= 1) return {};
  std::vector<mpq_class> c(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    c[k] = q_number(k + 1, q) * p[k + 1];
  }
  return Polynomial(std::move(c));
}

Polynomial q_derivative_by_difference(const Polynomial& f, const QParam& q) {
  if (q.is_classical()) {
    throw std::invalid_argument("q_derivative_by_difference: q = 1 makes the quotient 0/0");
  }
  const Polynomial numerator = dilate(f, q) - f;
  if (numerator.coeff(0) != 0) {
    // f(qz) - f(z) always vanishes at z = 0.
    throw std::logic_error("q_derivative_by_difference: numerator not divisible by z");
  }
  const mpq_class scale = mpq_class(1) / (q.value() - 1);
  const auto& n = numerator.coeffs();
  if (n.size() <= 1) return {};
  std::vector<mpq_class> c(n.begin() + 1, n.end());
  return scale * Polynomial(std::move(c));
}

Polynomial dilate(const Polynomial& f, const QParam& q) {
  std::vector<mpq_class> c(f.coeffs());
  mpq_class power = 1;
  for (auto& x : c) {
    x *= power;
    power *= q.value();
  }
  return Polynomial(std::move(c));
}

Polynomial qwh_commutator(const Polynomial& f, const QParam& q) {
  return q_derivative(f.times_z(), q) - q_derivative(f, q).times_z();
}

IdentityPair scale_generator_identity(const Polynomial& f) {
  Polynomial lhs = mpq_class(2) * f.derivative().times_z();

  // 2 alpha^2 f = (z + d)(z + d) f and 2 alpha^dagger^2 f = (z - d)(z - d) f;
  // the factors of 2 cancel against the 1/sqrt2 normalizations.
  const auto plus = [](const Polynomial& g) { return g.times_z() + g.derivative(); };
  const auto minus = [](const Polynomial& g) { return g.times_z() - g.derivative(); };
  const Polynomial two_alpha_sq = plus(plus(f));
  const Polynomial two_alpha_dag_sq = minus(minus(f));
  const mpq_class half(1, 2);
  Polynomial rhs = half * (two_alpha_sq - two_alpha_dag_sq) - f;
  return {std::move(lhs), std::move(rhs)};
}

fock::StateVector to_fock(const Polynomial& f, const fock::FockSpace& space) {
  const auto deg = f.degree();
  if (deg && *deg >= space.dim()) {
    std::ostringstream msg;
    msg << "to_fock: degree " << *deg << " does not fit in dimension " << space.dim();
    throw std::invalid_argument(msg.str());
  }
  fock::Vector amps = fock::Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  const auto& p = f.coeffs();
  for (std::size_t n = 0; n < p.size(); ++n) {
    const mpf_class c = mpf_class(p[n], kBoundaryPrecision) * sqrt_factorial(n);
    amps(static_cast<Eigen::Index>(n)) = c.get_d();
  }
  return fock::StateVector(space, std::move(amps));
}

std::vector<fock::cplx> from_fock(const fock::StateVector& psi) {
  std::vector<fock::cplx> out(psi.space().dim());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = psi(n) / sqrt_factorial(n).get_d();
  }
  return out;
}

}  // namespace qdamp::bargmann
