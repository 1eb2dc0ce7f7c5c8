#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace octoslice {

/// Numerical tolerances shared by the algebra routines.
struct Tolerance {
  /// Absolute tolerance for algebraic identities on unit-scale inputs.
  double identity = 1e-12;
  /// Relative tolerance for matrix-valued and derived quantities.
  double relative = 1e-9;
};

/// An element of the real octonion algebra, stored by its coordinates in
/// the standard basis {1, i, j, k, l, li, lj, lk}.
///
/// The product is the three-level Cayley-Dickson doubling
///   C = R + iR,  H = C + jC,  O = H + lH,
/// with (a + l b)(c + l d) = ac - d b^c + l(a^c d + c b) at the top level.
class Octonion {
 public:
  static constexpr std::size_t kDim = 8;

  constexpr Octonion() = default;
  constexpr explicit Octonion(double real) : c_{real, 0, 0, 0, 0, 0, 0, 0} {}
  constexpr explicit Octonion(const std::array<double, kDim>& coeffs) : c_(coeffs) {}

  static constexpr Octonion basis(std::size_t index) {
    Octonion out;
    out.c_[index] = 1.0;
    return out;
  }

  constexpr double operator[](std::size_t index) const { return c_[index]; }
  constexpr double& operator[](std::size_t index) { return c_[index]; }
  constexpr const std::array<double, kDim>& coeffs() const { return c_; }

  constexpr double real() const { return c_[0]; }
  constexpr Octonion imag() const {
    Octonion out = *this;
    out.c_[0] = 0.0;
    return out;
  }
  constexpr Octonion conj() const {
    Octonion out;
    out.c_[0] = c_[0];
    for (std::size_t t = 1; t < kDim; ++t) out.c_[t] = -c_[t];
    return out;
  }
  /// n(x) = x x^c, the squared Euclidean norm.
  constexpr double norm() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double abs() const { return std::sqrt(norm()); }
  /// t(x) = x + x^c.
  constexpr double trace() const { return 2.0 * c_[0]; }
  bool is_finite() const;

  Octonion& operator+=(const Octonion& rhs) {
    for (std::size_t t = 0; t < kDim; ++t) c_[t] += rhs.c_[t];
    return *this;
  }
  Octonion& operator-=(const Octonion& rhs) {
    for (std::size_t t = 0; t < kDim; ++t) c_[t] -= rhs.c_[t];
    return *this;
  }
  Octonion& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  Octonion& operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator-(Octonion a) {
    for (double& v : a.c_) v = -v;
    return a;
  }
  friend Octonion operator*(Octonion a, double s) { return a *= s; }
  friend Octonion operator*(double s, Octonion a) { return a *= s; }
  friend Octonion operator/(Octonion a, double s) { return a /= s; }
  friend Octonion operator+(Octonion a, double s) {
    a.c_[0] += s;
    return a;
  }
  friend Octonion operator+(double s, Octonion a) { return a + s; }
  friend Octonion operator-(Octonion a, double s) {
    a.c_[0] -= s;
    return a;
  }
  friend Octonion operator-(double s, const Octonion& a) { return (-a) + s; }
  /// Octonion product (non-associative).
  friend Octonion operator*(const Octonion& a, const Octonion& b);

  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

 private:
  std::array<double, kDim> c_{};
};

namespace units {
inline constexpr Octonion one = Octonion::basis(0);
inline constexpr Octonion i = Octonion::basis(1);
inline constexpr Octonion j = Octonion::basis(2);
inline constexpr Octonion k = Octonion::basis(3);
inline constexpr Octonion l = Octonion::basis(4);
inline constexpr Octonion li = Octonion::basis(5);
inline constexpr Octonion lj = Octonion::basis(6);
inline constexpr Octonion lk = Octonion::basis(7);
}  // namespace units

Octonion mul(const Octonion& a, const Octonion& b);
inline Octonion conj(const Octonion& a) { return a.conj(); }
inline double norm(const Octonion& a) { return a.norm(); }
inline double trace(const Octonion& a) { return a.trace(); }
inline double re(const Octonion& a) { return a.real(); }
inline Octonion im(const Octonion& a) { return a.imag(); }
inline double abs(const Octonion& a) { return a.abs(); }

/// Euclidean scalar product, equal to re(x y^c).
double dot(const Octonion& a, const Octonion& b);

/// x^{-1} = n(x)^{-1} x^c. Throws DivisionByZero on 0.
Octonion inverse(const Octonion& a);

/// (x y) z - x (y z).
Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z);

/// v x w := im(v w) for imaginary v, w. Throws NotImaginary when either
/// argument has a real part beyond tol * (1 + |arg|).
Octonion vector_product(const Octonion& v, const Octonion& w, double tol = 1e-12);

/// Integer power by repeated multiplication (power associative, so grouping is
/// irrelevant); negative exponents go through inverse().
Octonion pow(const Octonion& x, int n);

/// Product through the cached basis table. Agrees with operator* to rounding;
/// the table itself is generated from the Cayley-Dickson recursion and
/// verified on first use.
Octonion table_mul(const Octonion& a, const Octonion& b);

/// Basis product e_a e_b = sign * e_index.
struct BasisProduct {
  std::size_t index;
  double sign;
};
const std::array<std::array<BasisProduct, 8>, 8>& multiplication_table();

/// Text rendering as signed coefficient terms, e.g. "1+2i-0.5lj".
/// Uses the shortest round-trip representation of each coefficient.
std::string format_octonion(const Octonion& x);
/// Same, with a fixed number of significant digits.
std::string format_octonion(const Octonion& x, int significant_digits);

/// Parses signed coefficient terms over {1,i,j,k,l,li,lj,lk}. A bare unit
/// token ("i", "-lk") carries coefficient 1; repeated units accumulate.
/// Throws SyntaxError / UnknownToken with a character span.
Octonion parse_octonion(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Octonion& x);

/// The seven standard unit suffixes, indexed by basis position (index 0 is "").
std::string_view unit_suffix(std::size_t index);

}  // namespace octoslice
