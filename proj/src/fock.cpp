#include "qdamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace qdamp::fock {

namespace {

void require_same_space(const FockSpace& a, const FockSpace& b, const char* op) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ShapeError(msg.str());
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

// Higham's [13/13] coefficients and the 1-norm threshold below which the
// approximant is accurate to unit roundoff.
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                              1187353796428800.0,  129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,       1323241920.0,
                              40840800.0,          960960.0,            16380.0,
                              182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

template <typename Mat>
Mat pade13_scaled_squared(const Mat& a, int& squarings) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  squarings = 0;
  if (norm1 > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
  }
  const Mat x = a / std::ldexp(1.0, squarings);
  const auto n = x.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat x2 = x * x;
  const Mat x4 = x2 * x2;
  const Mat x6 = x4 * x2;
  // Normalized so the constant term of V is exactly 1 (exp(0) = I exactly).
  double b[14];
  for (int k = 0; k < 14; ++k) b[k] = kPade13[k] / kPade13[0];
  Mat inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
  Mat u_half = x6 * inner;
  u_half += b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * ident;
  const Mat u = x * u_half;
  inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
  Mat v = x6 * inner;
  v += b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * ident;
  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    r = (r * r).eval();
  }
  return r;
}

}  // namespace

FockSpace::FockSpace(std::size_t dim, std::size_t max_dim) : dim_(dim), max_dim_(max_dim) {
  if (dim == 0) {
    throw std::invalid_argument("FockSpace: dimension must be at least 1");
  }
  if (dim > max_dim) {
    std::ostringstream msg;
    msg << "FockSpace: dimension " << dim << " exceeds cap " << max_dim;
    throw DimensionCapError(msg.str());
  }
}

Operator::Operator(FockSpace space, Matrix entries) : space_(space), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    std::ostringstream msg;
    msg << "Operator: expected " << d << "x" << d << " entries, got " << entries_.rows() << "x"
        << entries_.cols();
    throw ShapeError(msg.str());
  }
  if (!all_finite(entries_)) {
    throw NonFiniteError("Operator: entries must be finite");
  }
}

Operator Operator::identity(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Identity(d, d));
}

Operator Operator::zero(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Zero(d, d));
}

Operator Operator::adjoint() const { return Operator(space_, entries_.adjoint()); }

Operator operator+(const Operator& x, const Operator& y) {
  require_same_space(x.space_, y.space_, "operator+");
  return Operator(x.space_, x.entries_ + y.entries_);
}

Operator operator-(const Operator& x, const Operator& y) {
  require_same_space(x.space_, y.space_, "operator-");
  return Operator(x.space_, x.entries_ - y.entries_);
}

Operator operator*(const Operator& x, const Operator& y) {
  require_same_space(x.space_, y.space_, "operator*");
  return Operator(x.space_, x.entries_ * y.entries_);
}

Operator operator*(cplx s, const Operator& x) { return Operator(x.space_, s * x.entries_); }

StateVector operator*(const Operator& x, const StateVector& psi) {
  require_same_space(x.space_, psi.space(), "operator*(state)");
  return StateVector(x.space_, x.entries_ * psi.amplitudes());
}

StateVector::StateVector(FockSpace space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(space_.dim())) {
    throw ShapeError("StateVector: amplitude length does not match dimension");
  }
  if (!all_finite(amplitudes_)) {
    throw NonFiniteError("StateVector: amplitudes must be finite");
  }
}

StateVector StateVector::basis(const FockSpace& space, std::size_t n) {
  if (n >= space.dim()) {
    throw std::out_of_range("StateVector::basis: level outside the truncated space");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(n)) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  require_same_space(a.space_, b.space_, "state difference");
  return StateVector(a.space_, a.amplitudes_ - b.amplitudes_);
}

StateVector operator*(cplx s, const StateVector& a) {
  return StateVector(a.space_, s * a.amplitudes_);
}

LadderPair ladder_ops(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Matrix low = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    low(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  Operator lowering(space, std::move(low));
  Operator raising = lowering.adjoint();
  return {std::move(lowering), std::move(raising)};
}

Operator number_op(const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Matrix n = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return Operator(space, std::move(n));
}

Operator commutator(const Operator& x, const Operator& y) {
  require_same_space(x.space(), y.space(), "commutator");
  return Operator(x.space(), x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

ExpmResult matrix_exponential_with_info(const Operator& x, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("matrix_exponential: tolerance must be positive");
  }
  const Matrix& a = x.matrix();
  int squarings = 0;
  Matrix result;
  // Generators in this library are usually real; the real path is ~4x cheaper.
  if (a.imag().isZero(0.0)) {
    const Eigen::MatrixXd re = a.real();
    result = pade13_scaled_squared(re, squarings).cast<cplx>();
  } else {
    result = pade13_scaled_squared(a, squarings);
  }

  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double norm_x = a.cwiseAbs().colwise().sum().maxCoeff();
  double estimate = std::numeric_limits<double>::infinity();
  if (result.allFinite()) {
    const double norm_e = result.cwiseAbs().colwise().sum().maxCoeff();
    estimate = u * (norm_x + squarings + 13.0) * norm_e;
  }
  if (!(estimate <= tol)) {
    std::ostringstream msg;
    msg << "matrix_exponential: error estimate " << estimate << " exceeds tolerance " << tol
        << " (||X||_1 = " << norm_x << ")";
    throw ToleranceError(msg.str(), estimate, tol);
  }
  return {Operator(x.space(), std::move(result)), squarings, estimate};
}

Operator matrix_exponential(const Operator& x, double tol) {
  return matrix_exponential_with_info(x, tol).value;
}

double interior_residual(const Operator& x, const Operator& y, std::size_t margin) {
  require_same_space(x.space(), y.space(), "interior_residual");
  if (margin >= x.dim()) {
    std::ostringstream msg;
    msg << "interior_residual: margin " << margin << " leaves no interior in dimension "
        << x.dim();
    throw std::invalid_argument(msg.str());
  }
  const auto k = static_cast<Eigen::Index>(x.dim() - margin);
  return (x.matrix().topLeftCorner(k, k) - y.matrix().topLeftCorner(k, k))
      .cwiseAbs()
      .maxCoeff();
}

double max_abs(const Operator& x) { return x.matrix().cwiseAbs().maxCoeff(); }

std::size_t policy_margin(double exponent_l1, int ladder_power) {
  if (!(exponent_l1 >= 0.0) || ladder_power < 0) {
    throw std::invalid_argument("policy_margin: arguments must be nonnegative");
  }
  return static_cast<std::size_t>(std::ceil(exponent_l1)) +
         2 * static_cast<std::size_t>(ladder_power);
}

}  // namespace qdamp::fock
