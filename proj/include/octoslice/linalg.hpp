#pragma once

#include <Eigen/Dense>

#include "octoslice/octonion.hpp"
#include "octoslice/slice_point.hpp"

namespace octoslice {

using Matrix8 = Eigen::Matrix<double, 8, 8>;
using Vector8 = Eigen::Matrix<double, 8, 1>;

Vector8 to_vector(const Octonion& x);
Octonion from_vector(const Vector8& v);

/// Matrix of x -> p x (resp. x p) in the standard basis.
Matrix8 matrix_of_left_mul(const Octonion& p);
Matrix8 matrix_of_right_mul(const Octonion& p);
/// Same maps written in a splitting basis (source and target).
Matrix8 matrix_of_left_mul(const Octonion& p, const SplittingBasis& basis);
Matrix8 matrix_of_right_mul(const Octonion& p, const SplittingBasis& basis);

/// Change of coordinates from the splitting basis to the standard one
/// (columns are the basis elements).
Matrix8 basis_matrix(const SplittingBasis& basis);

/// Pfaffian of an even-dimensional skew matrix by first-row expansion,
/// normalized so Pf([[0, a], [-a, 0]]) = a. Throws NotSkew when
/// ||M + M^T|| exceeds tol or the dimension is odd.
double pfaffian(const Eigen::MatrixXd& m, double tol = 1e-12);

/// True when M^2 = -I and M^T M = I to tol.
bool is_orthogonal_complex_structure(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Both inputs must be orthogonal complex structures of the same dimension
/// (NotAComplexStructure otherwise); compares Pfaffian signs.
bool same_orientation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-9);

/// Orientation reference per dimension: L_i for 8, diag(H, ..., H) for 4 and 6,
/// with H = [[0, -1], [1, 0]].
Eigen::MatrixXd reference_structure(Eigen::Index dimension);

bool induces_standard_orientation(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Maximum absolute column sum of a - b.
double structure_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace octoslice
