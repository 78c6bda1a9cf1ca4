#pragma once

// Exact polynomial calculus in the Fock-Bargmann picture: a^dagger -> z,
// a -> d/dz, N -> z d/dz. All arithmetic is over GMP rationals; the only
// floating-point conversion happens in to_fock / from_fock.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdamp/fock.hpp"

namespace qdamp::bargmann {

// Real positive rational deformation parameter q = e^zeta.
class QParam {
 public:
  explicit QParam(mpq_class value);
  // Accepts "p/q" or an integer literal.
  static QParam parse(std::string_view text);

  const mpq_class& value() const noexcept { return value_; }
  bool is_classical() const { return value_ == 1; }
  QParam inverse() const { return QParam(mpq_class(1) / value_); }

 private:
  mpq_class value_;
};

// f(z) = sum_k p_k z^k with trailing zeros stripped.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);

  static Polynomial monomial(std::size_t n, const mpq_class& coeff = 1);

  // nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  mpq_class coeff(std::size_t k) const;

  mpq_class evaluate(const mpq_class& z) const;

  // z * f
  Polynomial times_z() const;
  // f'
  Polynomial derivative() const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const mpq_class& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  std::vector<mpq_class> coeffs_;
};

// [n]_q = (q^n - 1)/(q - 1); n when q = 1.
mpq_class q_number(std::size_t n, const QParam& q);

// D_q f, coefficient-wise: (D_q f)_k = [k+1]_q p_{k+1}.
Polynomial q_derivative(const Polynomial& f, const QParam& q);

// D_q f as the difference quotient (f(qz) - f(z)) / ((q - 1) z), with the
// division by z carried out exactly. Requires q != 1.
Polynomial q_derivative_by_difference(const Polynomial& f, const QParam& q);

// f(qz).
Polynomial dilate(const Polynomial& f, const QParam& q);

// D_q(z f) - z D_q(f); equals dilate(f, q) when the deformed commutator acts
// as the dilation q^{z d/dz}.
Polynomial qwh_commutator(const Polynomial& f, const QParam& q);

struct IdentityPair {
  Polynomial lhs;
  Polynomial rhs;
};

// lhs = 2 z f', rhs = (alpha^2 - alpha^dagger^2) f - f with
// alpha = (z + d/dz)/sqrt2, alpha^dagger = (z - d/dz)/sqrt2.
IdentityPair scale_generator_identity(const Polynomial& f);

// Amplitudes c_n = p_n sqrt(n!) in the basis u_n = z^n / sqrt(n!).
// Rejects degree >= D.
fock::StateVector to_fock(const Polynomial& f, const fock::FockSpace& space);

// Inverse of to_fock in floating point: p_n = c_n / sqrt(n!).
std::vector<fock::cplx> from_fock(const fock::StateVector& psi);

}  // namespace qdamp::bargmann
