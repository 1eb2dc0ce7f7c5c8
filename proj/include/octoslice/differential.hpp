#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "octoslice/linalg.hpp"
#include "octoslice/stem.hpp"

namespace octoslice {

/// Real rank of df: 0, 2, 6 or 8.
enum class RankClass { Zero, Plane, Hyper, Full };
std::string_view to_string(RankClass r);
int rank_of(RankClass r);

struct DifferentialReport {
  Octonion point;
  Octonion cderiv;
  /// Absent at real points.
  std::optional<Octonion> sderiv;
  RankClass rank_class = RankClass::Full;
  double det = 0.0;
  double det_tolerance = 0.0;
  bool singular = false;
};

/// df(v + w) = v f'_c(x0) + w f'_s(x0) with v in C_J and w orthogonal to it;
/// at real points df(v) = v f'_c(x0).
Octonion differential_apply(const SliceExpr& e, const Octonion& x0, const Octonion& v);

/// Matrix of df in the splitting basis of the unit of x0 (source and target).
Matrix8 jacobian_matrix(const SliceExpr& e, const Octonion& x0);

/// Central-difference Jacobian in the same basis, from evaluations of f only.
Matrix8 finite_difference_jacobian(const SliceExpr& e, const Octonion& x0, double h = 1e-5);

/// Closed form |b|^4 (re^2(a b^c) + re^2(J (a b^c))) with a = f'_c, b = f'_s;
/// |f'_c|^8 at real points.
double jacobian_det(const SliceExpr& e, const Octonion& x0);

/// Same closed form from the two derivatives directly.
double jacobian_det_from(const Octonion& cderiv, const Octonion& sderiv, const Octonion& unit);

RankClass rank_class(const SliceExpr& e, const Octonion& x0);
bool is_singular(const SliceExpr& e, const Octonion& x0);
DifferentialReport differential_report(const SliceExpr& e, const Octonion& x0);

/// B(a, b) = {a, J a, J1 b, (J J1) b, J2 b, (J J2) b, J3 b, (J J3) b} written in
/// the coordinates of the splitting basis (columns).
Matrix8 paired_basis_matrix(const Octonion& a, const Octonion& b, const SplittingBasis& basis);

/// Axis-aligned sampling region: center + sum_k t_k dirs[k] with
/// |t_k| <= half_widths[k] on counts[k] grid values.
struct ScanRegion {
  std::vector<Octonion> basis_dirs;
  Octonion center;
  std::vector<double> half_widths;
  std::vector<int> counts;
  /// Refined points are kept when det(df) is at most this value.
  double accept_det = 1e-9;
};

struct SingularPoint {
  Octonion point;
  double det = 0.0;
  Octonion cderiv;
  std::optional<Octonion> sderiv;
};

/// Tracks minima of det(df) along every grid line, refines each by
/// golden-section search to 1e-9 and keeps those with det <= accept_det.
/// Samples outside the domain are skipped. Throws EmptyBox for an empty grid.
std::vector<SingularPoint> scan_singular_set(const SliceExpr& e, const ScanRegion& region);

}  // namespace octoslice
