#pragma once

#include <complex>

#include <Eigen/Dense>

#include "octoslice/linalg.hpp"
#include "octoslice/stem.hpp"

namespace octoslice {

/// A constant linear complex structure on R^4, R^6 or R^8 in the standard basis.
struct LinearStructure {
  Eigen::MatrixXd matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
  /// ||M^2 + I||_max <= tol.
  bool squares_to_minus_identity(double tol = 1e-9) const;
  /// ||M^T M - I||_max <= tol.
  bool is_orthogonal(double tol = 1e-9) const;
  Octonion apply(const Octonion& x) const;
};

/// L_J with J = im(x0) / |im(x0)|. Throws RealPoint.
LinearStructure standard_structure_at(const Octonion& x0);

/// Chart xi -> phi2[1 : xi] of the orthogonal complex structures on R^4.
LinearStructure phi2(std::complex<double> xi);
/// Chart (xi1, xi2, xi3) -> phi3[1 : xi1 : xi2 : xi3] on R^6.
LinearStructure phi3(std::complex<double> xi1, std::complex<double> xi2, std::complex<double> xi3);

/// x -> p (J (p^{-1} x)). Throws DivisionByZero for p = 0.
LinearStructure conjugated_structure_L(const ImaginaryUnit& unit, const Octonion& p);
/// x -> (J (x p^{-1})) p. Throws DivisionByZero for p = 0.
LinearStructure conjugated_structure_R(const ImaginaryUnit& unit, const Octonion& p);
/// The same map assembled as x -> s^{-1}((s J s^{-1})(s x)) with s^2 = p.
/// Throws NoSquareRoot when p lies in C_J.
LinearStructure conjugated_structure_R_via_root(const ImaginaryUnit& unit, const Octonion& p);

/// Principal square root inside span{1, im(p)}: re(s) >= 0, ties toward a
/// positive imaginary part. Throws NoSquareRoot for negative reals.
Octonion octonion_sqrt(const Octonion& p);

/// True when both <v, 1> and <v, J> are at most tol |v|.
bool in_slice_complement(const Octonion& v, const Octonion& unit, double tol = 1e-9);

struct InducedStructureReport {
  Octonion base_point;
  LinearStructure structure;
  /// Associator criterion.
  bool orthogonal = false;
  /// M^T M = I to 1e-9, computed independently of the associator.
  bool matrix_orthogonal = false;
  double associator_norm = 0.0;
  double commutation_residual = 0.0;
  /// ||df|| in the operator 2-norm, the scale for the residual.
  double differential_norm = 0.0;
};

/// The structure J0(p + q) = J p + (J (q b^{-1})) b on C_J a + (C_J)^perp b,
/// a = f'_c(x0), b = f'_s(x0), which makes df intertwine L_J and J0.
/// Throws RealPoint, DegeneratePoint (b = 0) or ExceptionalDirection
/// (a b^{-1} orthogonal to C_J).
InducedStructureReport induced_structure(const SliceExpr& e, const Octonion& x0);

/// (x - x0)(x - x0^c)^{-1} for x on the sphere of x0. Throws NotOnSphere or
/// Antipode (x = x0^c).
Octonion stereographic_theta(const Octonion& x, const Octonion& x0, double tol = 1e-9);
/// y -> alpha0 - beta0 J y.
Octonion stereographic_rescale(const Octonion& y, const Octonion& x0);

}  // namespace octoslice
