#pragma once

// Truncated Fock spaces and dense operators on them.
//
// A FockSpace of dimension D keeps the levels |0>..|D-1>. Operators are dense
// complex D x D matrices in units hbar = m = omega = 1. Identities that hold in
// the untruncated space are compared on an interior block away from the
// truncation edge (see interior_residual).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

#include "qdamp/errors.hpp"

namespace qdamp::fock {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultMaxDim = 256;
// Upper bound for internal padded workspaces (see squeeze::working_dim).
inline constexpr std::size_t kWorkingMaxDim = 1024;
inline constexpr double kDefaultExpmTol = 1e-10;

class FockSpace {
 public:
  explicit FockSpace(std::size_t dim, std::size_t max_dim = kDefaultMaxDim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t max_dim() const noexcept { return max_dim_; }

  friend bool operator==(const FockSpace& a, const FockSpace& b) noexcept {
    return a.dim_ == b.dim_;
  }

 private:
  std::size_t dim_;
  std::size_t max_dim_;
};

class StateVector;

class Operator {
 public:
  // Throws ShapeError if entries are not dim x dim, NonFiniteError on NaN/Inf.
  Operator(FockSpace space, Matrix entries);

  static Operator identity(const FockSpace& space);
  static Operator zero(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  const Matrix& matrix() const noexcept { return entries_; }
  cplx operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

  Operator adjoint() const;

  friend Operator operator+(const Operator& x, const Operator& y);
  friend Operator operator-(const Operator& x, const Operator& y);
  friend Operator operator*(const Operator& x, const Operator& y);
  friend Operator operator*(cplx s, const Operator& x);
  friend Operator operator*(const Operator& x, cplx s) { return s * x; }
  friend Operator operator-(const Operator& x) { return cplx(-1.0) * x; }
  friend StateVector operator*(const Operator& x, const StateVector& psi);

 private:
  FockSpace space_;
  Matrix entries_;
};

class StateVector {
 public:
  StateVector(FockSpace space, Vector amplitudes);

  // |n> in the number basis.
  static StateVector basis(const FockSpace& space, std::size_t n);

  const FockSpace& space() const noexcept { return space_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  cplx operator()(std::size_t n) const { return amplitudes_(n); }
  double norm() const { return amplitudes_.norm(); }

  friend StateVector operator-(const StateVector& a, const StateVector& b);
  friend StateVector operator*(cplx s, const StateVector& a);

 private:
  FockSpace space_;
  Vector amplitudes_;
};

struct LadderPair {
  Operator lowering;
  Operator raising;
};

// lowering[n-1, n] = sqrt(n); raising is its adjoint.
LadderPair ladder_ops(const FockSpace& space);

// diag(0, 1, ..., D-1).
Operator number_op(const FockSpace& space);

// XY - YX. Throws ShapeError on dimension mismatch.
Operator commutator(const Operator& x, const Operator& y);

struct ExpmResult {
  Operator value;
  int squarings;
  // First-order forward error bound for the computed exponential (max-abs units).
  double error_estimate;
};

// exp(X) by scaling and squaring with a [13/13] Pade approximant.
//
// The estimate models rounding in the approximant and in the squaring phase:
// u * (||X||_1 + s + 13) * ||exp(X)||_1. If it exceeds tol, or the result
// overflows, ToleranceError is thrown instead of returning a degraded matrix.
ExpmResult matrix_exponential_with_info(const Operator& x, double tol = kDefaultExpmTol);
Operator matrix_exponential(const Operator& x, double tol = kDefaultExpmTol);

// Max-abs difference of X and Y over rows/cols with index < D - margin.
// Throws ShapeError on mismatch, std::invalid_argument if margin >= D.
double interior_residual(const Operator& x, const Operator& y, std::size_t margin);

double max_abs(const Operator& x);

// Default comparison margin: ceil(l1 norm of the exponent's coefficients)
// plus two levels per applied ladder power.
std::size_t policy_margin(double exponent_l1, int ladder_power);

}  // namespace qdamp::fock
