#include "octoslice/linalg.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

double residual_norm(const Octonion& v, const std::vector<Octonion>& span, Octonion* residual) {
  Octonion r = v;
  for (const Octonion& e : span) r -= dot(r, e) * e;
  *residual = r;
  return r.abs();
}

// First standard basis vector (from `first` on) whose residual against the
// orthonormal `span` has norm at least 1/2; at least one always qualifies
// because the residuals of all eight have squared norms summing to 8 - dim.
Octonion next_direction(const std::vector<Octonion>& span, std::size_t first) {
  for (std::size_t t = first; t < 8; ++t) {
    Octonion r;
    if (residual_norm(Octonion::basis(t), span, &r) >= 0.5) return r / r.abs();
  }
  throw Error(ErrorKind::InvalidArgument, "splitting basis construction found no direction");
}

double pfaffian_rec(const Eigen::MatrixXd& m, std::vector<Eigen::Index>& idx) {
  if (idx.empty()) return 1.0;
  const Eigen::Index first = idx.front();
  double total = 0.0;
  for (std::size_t pos = 1; pos < idx.size(); ++pos) {
    const double entry = m(first, idx[pos]);
    if (entry == 0.0) continue;
    std::vector<Eigen::Index> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t q = 1; q < idx.size(); ++q) {
      if (q != pos) rest.push_back(idx[q]);
    }
    const double sign = (pos % 2 == 1) ? 1.0 : -1.0;
    total += sign * entry * pfaffian_rec(m, rest);
  }
  return total;
}

void require_structure(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || !is_orthogonal_complex_structure(m, tol)) {
    throw Error(ErrorKind::NotAComplexStructure, "matrix is not an orthogonal complex structure");
  }
}

}  // namespace

ImaginaryUnit::ImaginaryUnit(const Octonion& v, double tol) {
  const double scale = 1.0 + v.abs();
  if (std::abs(v.real()) > tol * scale) {
    throw Error(ErrorKind::NotImaginary, "imaginary unit has a nonzero real part");
  }
  const Octonion w = v.imag();
  const double n = w.abs();
  if (n <= tol * scale) throw Error(ErrorKind::NotImaginary, "imaginary unit is zero");
  // Inputs that are already unit length are kept bit-for-bit.
  value_ = std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() ? w : w / n;
}

SlicePoint SlicePoint::decompose(const Octonion& x) {
  SlicePoint p;
  p.alpha = x.real();
  const Octonion v = x.imag();
  p.beta = v.abs();
  if (p.beta > 0.0) p.unit = ImaginaryUnit(v);
  return p;
}

SplittingBasis::SplittingBasis(const ImaginaryUnit& unit) : unit_(unit) {
  const Octonion one(1.0);
  const Octonion& J = unit.value();
  const Octonion J1 = next_direction({one, J}, 1);
  const Octonion JJ1 = J * J1;
  const Octonion J2 = next_direction({one, J, J1, JJ1}, 0);
  const Octonion J3 = J1 * J2;
  elements_ = {one, J, J1, JJ1, J2, J * J2, J3, J * J3};
}

std::array<double, 8> SplittingBasis::coordinates(const Octonion& x) const {
  std::array<double, 8> c{};
  for (std::size_t t = 0; t < 8; ++t) c[t] = dot(x, elements_[t]);
  return c;
}

Octonion SplittingBasis::from_coordinates(const std::array<double, 8>& c) const {
  Octonion x;
  for (std::size_t t = 0; t < 8; ++t) x += c[t] * elements_[t];
  return x;
}

SplittingBasis splitting_basis(const ImaginaryUnit& unit) { return SplittingBasis(unit); }

Octonion project_slice(const Octonion& v, const Octonion& unit) {
  return v.real() + dot(v, unit) * unit;
}

Vector8 to_vector(const Octonion& x) {
  Vector8 v;
  for (int t = 0; t < 8; ++t) v(t) = x[static_cast<std::size_t>(t)];
  return v;
}

Octonion from_vector(const Vector8& v) {
  Octonion x;
  for (int t = 0; t < 8; ++t) x[static_cast<std::size_t>(t)] = v(t);
  return x;
}

Matrix8 matrix_of_left_mul(const Octonion& p) {
  Matrix8 m;
  for (int t = 0; t < 8; ++t) m.col(t) = to_vector(p * Octonion::basis(static_cast<std::size_t>(t)));
  return m;
}

Matrix8 matrix_of_right_mul(const Octonion& p) {
  Matrix8 m;
  for (int t = 0; t < 8; ++t) m.col(t) = to_vector(Octonion::basis(static_cast<std::size_t>(t)) * p);
  return m;
}

Matrix8 basis_matrix(const SplittingBasis& basis) {
  Matrix8 m;
  for (int t = 0; t < 8; ++t) m.col(t) = to_vector(basis[static_cast<std::size_t>(t)]);
  return m;
}

Matrix8 matrix_of_left_mul(const Octonion& p, const SplittingBasis& basis) {
  const Matrix8 b = basis_matrix(basis);
  return b.transpose() * matrix_of_left_mul(p) * b;
}

Matrix8 matrix_of_right_mul(const Octonion& p, const SplittingBasis& basis) {
  const Matrix8 b = basis_matrix(basis);
  return b.transpose() * matrix_of_right_mul(p) * b;
}

double pfaffian(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(ErrorKind::NotSkew, "Pfaffian needs an even square matrix");
  }
  if ((m + m.transpose()).norm() > tol) throw Error(ErrorKind::NotSkew, "matrix is not skew-symmetric");
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index t = 0; t < m.rows(); ++t) idx[static_cast<std::size_t>(t)] = t;
  return pfaffian_rec(m, idx);
}

bool is_orthogonal_complex_structure(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  return (m * m + id).cwiseAbs().maxCoeff() <= tol && (m.transpose() * m - id).cwiseAbs().maxCoeff() <= tol;
}

bool same_orientation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  require_structure(a, tol);
  require_structure(b, tol);
  if (a.rows() != b.rows()) throw Error(ErrorKind::NotAComplexStructure, "dimension mismatch");
  // An orthogonal complex structure is skew up to tol; symmetrize before the
  // Pfaffian so rounding does not trip the skewness check.
  const Eigen::MatrixXd sa = 0.5 * (a - a.transpose());
  const Eigen::MatrixXd sb = 0.5 * (b - b.transpose());
  return std::signbit(pfaffian(sa, 1e-6)) == std::signbit(pfaffian(sb, 1e-6));
}

Eigen::MatrixXd reference_structure(Eigen::Index dimension) {
  if (dimension == 8) return matrix_of_left_mul(units::i);
  if (dimension != 4 && dimension != 6) {
    throw Error(ErrorKind::InvalidArgument, "reference structure exists for dimensions 4, 6 and 8");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
  for (Eigen::Index t = 0; t < dimension; t += 2) {
    m(t, t + 1) = -1.0;
    m(t + 1, t) = 1.0;
  }
  return m;
}

bool induces_standard_orientation(const Eigen::MatrixXd& m, double tol) {
  require_structure(m, tol);
  return same_orientation(m, reference_structure(m.rows()), tol);
}

double structure_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace octoslice
