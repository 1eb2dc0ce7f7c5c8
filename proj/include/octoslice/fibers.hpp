#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "octoslice/stem.hpp"

namespace octoslice {

/// The complex function z -> stem of N(f - c) at z, which is R (x) C valued.
struct RestrictedNormal {
  SliceExpr normal;
  SliceExpr derivative;
  /// Present when f lowers to a polynomial: real coefficients of x^t for t
  /// from `low`, so the map is sum z^t coeffs[t - low].
  std::optional<std::vector<double>> real_coefficients;
  int low = 0;

  std::complex<double> operator()(std::complex<double> z) const;
  std::complex<double> slope(std::complex<double> z) const;
};

RestrictedNormal normal_restricted(const SliceExpr& e, const Octonion& c);

struct FiberComponent {
  enum class Kind { Point, Sphere, WingSample };
  Kind kind = Kind::Point;
  /// Point data.
  Octonion point;
  int total_multiplicity = 0;
  /// Sphere data (alpha + beta S).
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<Octonion> samples;
  /// |f(point) - c| for points, the largest sampled deviation for spheres.
  double residual = 0.0;
};

/// Where to look for roots of the restricted normal function. The exact
/// polynomial path ignores the box.
struct FiberSearch {
  bool polynomial_exact = true;
  double alpha_min = -3.0;
  double alpha_max = 3.0;
  double beta_min = 0.05;
  double beta_max = 3.0;
  int seeds_alpha = 40;
  int seeds_beta = 40;
};

struct FiberResult {
  std::vector<FiberComponent> components;
  /// Newton seeds that did not converge (non-polynomial path).
  int nonconverged_seeds = 0;
};

/// Components of f^{-1}(c). Polynomials go through the companion matrix of
/// N(f - c) unless search.polynomial_exact is false; other expressions use
/// grid-seeded Newton iteration. Throws WingPresent when N(f - c) vanishes
/// identically.
FiberResult solve_fiber(const SliceExpr& e, const Octonion& c, const FiberSearch& search = {});

/// True when N(f - c) vanishes identically.
bool detect_wing(const SliceExpr& e, const Octonion& c);

/// alpha + (c - vs f(alpha + beta I)) f'_s(alpha + beta I)^{-1}, or, where
/// f'_s vanishes, the same formula for h with f = c + Delta^n h (polynomials
/// only; DegenerateSphereUnsupported otherwise). Throws DomainError for beta <= 0.
Octonion wing_parametrization(const SliceExpr& e, const Octonion& c, const ImaginaryUnit& unit,
                              std::complex<double> z);

/// Images of 1 and i under d(omega): (1 - a b^{-1}, J - (J a) b^{-1}) with
/// a = f'_c(omega(z)), b = f'_s(omega(z)) and J the unit of omega(z).
/// Throws DegeneratePoint when b vanishes.
std::pair<Octonion, Octonion> wing_tangent(const SliceExpr& e, const Octonion& c, const ImaginaryUnit& unit,
                                           std::complex<double> z);

struct BranchTestResult {
  bool singular = false;
  int total_multiplicity = 0;
};

/// Total multiplicity of f - f(x0) at the sphere of x0; singular when it is
/// at least 2. Throws NotLowerable for non-polynomial expressions.
BranchTestResult branch_test(const SliceExpr& e, const Octonion& x0);

/// Number of sample units used when confirming a sphere component.
inline constexpr int kSphereSamples = 20;

}  // namespace octoslice
