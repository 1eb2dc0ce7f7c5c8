#pragma once

#include <array>

#include "octoslice/octonion.hpp"

namespace octoslice {

/// A unit imaginary octonion J, so J^2 = -1.
class ImaginaryUnit {
 public:
  /// The default unit i.
  ImaginaryUnit() : value_(units::i) {}

  /// Normalizes v after discarding a real part below tol * (1 + |v|).
  /// Throws NotImaginary for a larger real part or a vanishing imaginary part.
  explicit ImaginaryUnit(const Octonion& v, double tol = 1e-12);

  const Octonion& value() const { return value_; }
  operator const Octonion&() const { return value_; }

 private:
  Octonion value_;
};

/// x = alpha + beta J with beta >= 0.
struct SlicePoint {
  double alpha = 0.0;
  double beta = 0.0;
  ImaginaryUnit unit;

  /// Real inputs get beta = 0 and the default unit i.
  static SlicePoint decompose(const Octonion& x);
  Octonion reconstruct() const { return alpha + beta * unit.value(); }
};

/// The ordered basis {1, J, J1, J J1, J2, J J2, J3, J J3} with J3 = J1 J2.
class SplittingBasis {
 public:
  explicit SplittingBasis(const ImaginaryUnit& unit);

  const std::array<Octonion, 8>& elements() const { return elements_; }
  const Octonion& operator[](std::size_t t) const { return elements_[t]; }
  const ImaginaryUnit& unit() const { return unit_; }

  /// Coordinates of x in this (orthonormal) basis.
  std::array<double, 8> coordinates(const Octonion& x) const;
  Octonion from_coordinates(const std::array<double, 8>& c) const;

 private:
  ImaginaryUnit unit_;
  std::array<Octonion, 8> elements_;
};

SplittingBasis splitting_basis(const ImaginaryUnit& unit);

/// Projection of v onto the slice C_J = span{1, J}.
Octonion project_slice(const Octonion& v, const Octonion& unit);

}  // namespace octoslice
