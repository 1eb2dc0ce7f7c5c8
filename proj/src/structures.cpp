#include "octoslice/structures.hpp"

#include <cmath>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

LinearStructure from_map(const auto& map) {
  Eigen::MatrixXd m(8, 8);
  for (int t = 0; t < 8; ++t) m.col(t) = to_vector(map(Octonion::basis(static_cast<std::size_t>(t))));
  return {m};
}

void require_nonzero(const Octonion& p) {
  if (p.norm() == 0.0) throw Error(ErrorKind::DivisionByZero, "conjugating element must be nonzero");
}

}  // namespace

bool LinearStructure::squares_to_minus_identity(double tol) const {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
  return (matrix * matrix + id).cwiseAbs().maxCoeff() <= tol;
}

bool LinearStructure::is_orthogonal(double tol) const {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
  return (matrix.transpose() * matrix - id).cwiseAbs().maxCoeff() <= tol;
}

Octonion LinearStructure::apply(const Octonion& x) const {
  if (matrix.rows() != 8) throw Error(ErrorKind::InvalidArgument, "structure does not act on octonions");
  return from_vector(matrix * to_vector(x));
}

LinearStructure standard_structure_at(const Octonion& x0) {
  const Octonion v = x0.imag();
  if (v.abs() == 0.0) throw Error(ErrorKind::RealPoint, "standard structure is undefined at real points");
  return {matrix_of_left_mul(v / v.abs())};
}

LinearStructure phi2(std::complex<double> xi) {
  const double a = xi.real();
  const double b = xi.imag();
  const double n = std::norm(xi);
  Eigen::Matrix4d m;
  // clang-format off
  m << 0.0,      -1.0 + n, -2.0 * b,  2.0 * a,
       1.0 - n,   0.0,      2.0 * a,  2.0 * b,
       2.0 * b,  -2.0 * a,  0.0,     -1.0 + n,
      -2.0 * a,  -2.0 * b,  1.0 - n,  0.0;
  // clang-format on
  return {Eigen::MatrixXd(m / (1.0 + n))};
}

LinearStructure phi3(std::complex<double> xi1, std::complex<double> xi2, std::complex<double> xi3) {
  const double a1 = xi1.real(), b1 = xi1.imag(), n1 = std::norm(xi1);
  const double a2 = xi2.real(), b2 = xi2.imag(), n2 = std::norm(xi2);
  const double a3 = xi3.real(), b3 = xi3.imag(), n3 = std::norm(xi3);
  Eigen::Matrix<double, 6, 6> m;
  // clang-format off
  m << 0.0, -1.0 + n1 + n2 - n3, -2.0 * (b1 - a3 * b2 + a2 * b3), 2.0 * (a1 + a2 * a3 + b2 * b3),
         -2.0 * (a3 * b1 + b2 - a1 * b3), -2.0 * (-a2 + a1 * a3 + b1 * b3),
       1.0 - n1 - n2 + n3, 0.0, 2.0 * (a1 - a2 * a3 - b2 * b3), 2.0 * (b1 + a3 * b2 - a2 * b3),
         2.0 * (a2 + a1 * a3 + b1 * b3), 2.0 * (-a3 * b1 + b2 + a1 * b3),
       2.0 * (b1 - a3 * b2 + a2 * b3), 2.0 * (-a1 + a2 * a3 + b2 * b3), 0.0, -1.0 + n1 - n2 + n3,
         -2.0 * (-a2 * b1 + a1 * b2 + b3), 2.0 * (a1 * a2 + a3 + b1 * b2),
       -2.0 * (a1 + a2 * a3 + b2 * b3), -2.0 * (b1 + a3 * b2 - a2 * b3), 1.0 - n1 + n2 - n3, 0.0,
         -2.0 * (a1 * a2 - a3 + b1 * b2), 2.0 * (a2 * b1 - a1 * b2 + b3),
       2.0 * (a3 * b1 + b2 - a1 * b3), -2.0 * (a2 + a1 * a3 + b1 * b3), 2.0 * (-a2 * b1 + a1 * b2 + b3),
         2.0 * (a1 * a2 - a3 + b1 * b2), 0.0, -1.0 - n1 + n2 + n3,
       2.0 * (-a2 + a1 * a3 + b1 * b3), -2.0 * (-a3 * b1 + b2 + a1 * b3), -2.0 * (a1 * a2 + a3 + b1 * b2),
         -2.0 * (a2 * b1 - a1 * b2 + b3), 1.0 + n1 - n2 - n3, 0.0;
  // clang-format on
  return {Eigen::MatrixXd(m / (1.0 + n1 + n2 + n3))};
}

LinearStructure conjugated_structure_L(const ImaginaryUnit& unit, const Octonion& p) {
  require_nonzero(p);
  const Octonion pinv = inverse(p);
  const Octonion& J = unit.value();
  return from_map([&](const Octonion& x) { return p * (J * (pinv * x)); });
}

LinearStructure conjugated_structure_R(const ImaginaryUnit& unit, const Octonion& p) {
  require_nonzero(p);
  const Octonion pinv = inverse(p);
  const Octonion& J = unit.value();
  return from_map([&](const Octonion& x) { return (J * (x * pinv)) * p; });
}

LinearStructure conjugated_structure_R_via_root(const ImaginaryUnit& unit, const Octonion& p) {
  require_nonzero(p);
  const Octonion& J = unit.value();
  if ((p - project_slice(p, J)).abs() <= 1e-12 * p.abs()) {
    throw Error(ErrorKind::NoSquareRoot, "p lies in C_J, where the map is L_J itself");
  }
  const Octonion s = octonion_sqrt(p);
  const Octonion sinv = inverse(s);
  const Octonion conjugated = s * J * sinv;
  return from_map([&](const Octonion& x) { return sinv * (conjugated * (s * x)); });
}

Octonion octonion_sqrt(const Octonion& p) {
  const Octonion v = p.imag();
  const double lv = v.abs();
  if (lv == 0.0) {
    if (p.real() < 0.0) throw Error(ErrorKind::NoSquareRoot, "negative reals have a sphere of square roots");
    return Octonion(std::sqrt(p.real()));
  }
  const std::complex<double> z = std::sqrt(std::complex<double>(p.real(), lv));
  return z.real() + (z.imag() / lv) * v;
}

bool in_slice_complement(const Octonion& v, const Octonion& unit, double tol) {
  const double scale = tol * v.abs();
  return std::abs(v.real()) <= scale && std::abs(dot(v, unit)) <= scale;
}

InducedStructureReport induced_structure(const SliceExpr& e, const Octonion& x0) {
  const SlicePoint sp = SlicePoint::decompose(x0);
  if (sp.beta == 0.0) throw Error(ErrorKind::RealPoint, "induced structure needs a non-real point");
  const Octonion& J = sp.unit.value();
  const ComplexifiedOctonion F = eval_stem(e, sp.alpha, sp.beta);
  const Octonion a = apply_unit(eval_stem(slice_derivative(e), sp.alpha, sp.beta), J);
  const Octonion b = F.im / sp.beta;
  if (b.abs() <= 1e-12 * (1.0 + a.abs())) throw Error(ErrorKind::DegeneratePoint, "spherical derivative vanishes");
  const Octonion binv = inverse(b);
  if (a.abs() == 0.0 || in_slice_complement(a * binv, J)) {
    throw Error(ErrorKind::ExceptionalDirection, "f'_c f'_s^{-1} is orthogonal to C_J");
  }

  // Columns of P span C_J a (first two) and (C_J)^perp b (last six).
  const SplittingBasis basis(sp.unit);
  Matrix8 P;
  P.col(0) = to_vector(a);
  P.col(1) = to_vector(J * a);
  for (int t = 2; t < 8; ++t) P.col(t) = to_vector(basis[static_cast<std::size_t>(t)] * b);
  const Eigen::PartialPivLU<Matrix8> lu(P);

  const auto structure_map = [&](const Octonion& u) {
    const Vector8 c = lu.solve(to_vector(u));
    const Octonion p = c(0) * a + c(1) * (J * a);
    const Octonion q = u - p;
    return J * p + (J * (q * binv)) * b;
  };

  InducedStructureReport r;
  r.base_point = x0;
  r.structure = from_map(structure_map);

  Matrix8 D;
  for (int t = 0; t < 8; ++t) {
    const Octonion v = Octonion::basis(static_cast<std::size_t>(t));
    const Octonion vc = project_slice(v, J);
    D.col(t) = to_vector(vc * a + (v - vc) * b);
  }
  const Matrix8 LJ = matrix_of_left_mul(J);
  r.commutation_residual = (r.structure.matrix * D - D * LJ).norm();
  r.differential_norm = D.jacobiSvd().singularValues()(0);

  r.associator_norm = associator(x0, a, b).abs();
  const double scale = 1.0 + x0.abs() * a.abs() * b.abs();
  r.orthogonal = r.associator_norm <= 1e-9 * scale;
  r.matrix_orthogonal = r.structure.is_orthogonal(1e-9);
  return r;
}

Octonion stereographic_theta(const Octonion& x, const Octonion& x0, double tol) {
  const SlicePoint s0 = SlicePoint::decompose(x0);
  if (s0.beta == 0.0) throw Error(ErrorKind::RealPoint, "base point must be non-real");
  const double scale = 1.0 + x0.abs();
  if (std::abs(x.real() - s0.alpha) > tol * scale || std::abs(x.imag().abs() - s0.beta) > tol * scale) {
    throw Error(ErrorKind::NotOnSphere, "point is not on the sphere of the base point");
  }
  const Octonion denom = x - x0.conj();
  if (denom.abs() <= tol * scale) throw Error(ErrorKind::Antipode, "projection is undefined at the antipode");
  return (x - x0) * inverse(denom);
}

Octonion stereographic_rescale(const Octonion& y, const Octonion& x0) {
  const SlicePoint s0 = SlicePoint::decompose(x0);
  return s0.alpha - s0.beta * (s0.unit.value() * y);
}

}  // namespace octoslice
