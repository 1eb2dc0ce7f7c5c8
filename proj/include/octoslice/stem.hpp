#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "octoslice/octonion.hpp"
#include "octoslice/slice_point.hpp"

namespace octoslice {

/// x + i y in the complexified octonions, i commuting with everything.
struct ComplexifiedOctonion {
  Octonion re;
  Octonion im;

  ComplexifiedOctonion() = default;
  ComplexifiedOctonion(const Octonion& r, const Octonion& i) : re(r), im(i) {}
  explicit ComplexifiedOctonion(double r) : re(r) {}

  /// Octonion conjugation applied to both parts.
  ComplexifiedOctonion conj() const { return {re.conj(), im.conj()}; }
  /// Complex conjugation x - i y.
  ComplexifiedOctonion reflect() const { return {re, -im}; }

  friend ComplexifiedOctonion operator+(const ComplexifiedOctonion& a, const ComplexifiedOctonion& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexifiedOctonion operator-(const ComplexifiedOctonion& a, const ComplexifiedOctonion& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexifiedOctonion operator-(const ComplexifiedOctonion& a) { return {-a.re, -a.im}; }
  friend ComplexifiedOctonion operator*(const ComplexifiedOctonion& a, const ComplexifiedOctonion& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexifiedOctonion operator*(double s, const ComplexifiedOctonion& a) { return {s * a.re, s * a.im}; }
  friend ComplexifiedOctonion operator*(std::complex<double> s, const ComplexifiedOctonion& a) {
    return {s.real() * a.re - s.imag() * a.im, s.real() * a.im + s.imag() * a.re};
  }
  friend ComplexifiedOctonion operator/(const ComplexifiedOctonion& a, double s) { return {a.re / s, a.im / s}; }
};

/// Value of the induced function at alpha + beta J.
inline Octonion apply_unit(const ComplexifiedOctonion& F, const Octonion& unit) { return F.re + unit * F.im; }

/// Immutable expression tree for a slice regular function. Nodes are shared,
/// so copies are cheap.
class SliceExpr {
 public:
  enum class Kind { Variable, Const, Eta, Add, Sub, SliceMul, Conj, Normal, Pow, CDeriv };

  /// The identity function x.
  SliceExpr();

  static SliceExpr variable();
  static SliceExpr constant(const Octonion& c);
  static SliceExpr constant(double c) { return constant(Octonion(c)); }
  /// The idempotent (1 + (im x / |im x|) J0) / 2.
  static SliceExpr eta(const ImaginaryUnit& unit);
  static SliceExpr add(const SliceExpr& l, const SliceExpr& r);
  static SliceExpr sub(const SliceExpr& l, const SliceExpr& r);
  static SliceExpr mul(const SliceExpr& l, const SliceExpr& r);
  static SliceExpr conjugate(const SliceExpr& e);
  static SliceExpr normal(const SliceExpr& e);
  /// Negative exponents are accepted only on the bare variable
  /// (InvalidArgument otherwise).
  static SliceExpr pow(const SliceExpr& e, int n);
  /// A node denoting the slice derivative of e; stores the symbolic result.
  static SliceExpr cderiv(const SliceExpr& e);

  Kind kind() const;
  /// Const value, or the Eta unit.
  const Octonion& value() const;
  int exponent() const;
  /// First child (the only one for unary nodes).
  SliceExpr lhs() const;
  SliceExpr rhs() const;
  /// For CDeriv nodes, the stored symbolic derivative.
  SliceExpr derivative() const;

  /// True when no Eta node is reachable; such trees lower to PolyRep.
  bool is_polynomial() const;
  /// True when the stem is undefined on the real axis.
  bool excludes_real_axis() const;

  friend SliceExpr operator+(const SliceExpr& a, const SliceExpr& b) { return add(a, b); }
  friend SliceExpr operator-(const SliceExpr& a, const SliceExpr& b) { return sub(a, b); }
  /// Slice product.
  friend SliceExpr operator*(const SliceExpr& a, const SliceExpr& b) { return mul(a, b); }

  struct Node;

 private:
  explicit SliceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool structurally_equal(const SliceExpr& a, const SliceExpr& b);

/// Stem value F(alpha + i beta). beta may be negative (reflected stem).
/// Throws DomainError at beta = 0 for Eta and for negative powers at 0.
ComplexifiedOctonion eval_stem(const SliceExpr& e, double alpha, double beta);

Octonion eval(const SliceExpr& e, const Octonion& x);

SliceExpr slice_mul(const SliceExpr& f, const SliceExpr& g);
SliceExpr conj(const SliceExpr& f);
SliceExpr normal(const SliceExpr& f);

/// (f(x) + f(x^c)) / 2.
Octonion spherical_value(const SliceExpr& e, const Octonion& x);
/// im(x)^{-1} (f(x) - f(x^c)) / 2. Throws RealPoint on the real axis.
Octonion spherical_derivative(const SliceExpr& e, const Octonion& x);

/// Symbolic slice derivative; zero subtrees are folded.
SliceExpr slice_derivative(const SliceExpr& e);

/// Finite sum of x^t a_t for t from `low` (possibly negative) upwards.
class PolyRep {
 public:
  PolyRep() = default;
  PolyRep(std::vector<Octonion> coeffs, int low = 0);

  static PolyRep constant(const Octonion& c) { return PolyRep({c}); }
  static PolyRep monomial(int exponent, const Octonion& c = Octonion(1.0));

  int low() const { return low_; }
  /// Highest exponent with a stored coefficient (low() - 1 when empty).
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Octonion>& coeffs() const { return coeffs_; }
  /// Coefficient of x^t (zero outside the stored range).
  Octonion coeff(int t) const;

  /// Drops exact-zero coefficients at both ends.
  PolyRep trimmed() const;
  /// Drops coefficients with modulus <= tol at both ends.
  PolyRep trimmed(double tol) const;
  double max_abs() const;
  bool is_zero(double tol = 0.0) const;
  /// Polynomial degree after exact trimming; -1 for the zero polynomial.
  int degree() const;

  Octonion eval(const Octonion& x) const;
  ComplexifiedOctonion eval_stem(double alpha, double beta) const;
  PolyRep derivative() const;
  PolyRep conj() const;
  PolyRep normal() const;

  friend PolyRep operator+(const PolyRep& a, const PolyRep& b);
  friend PolyRep operator-(const PolyRep& a, const PolyRep& b);
  friend PolyRep operator-(const PolyRep& a);
  /// Slice product: sum over n of x^n sum_k a_k b_{n-k}.
  friend PolyRep operator*(const PolyRep& a, const PolyRep& b);

  SliceExpr to_expr() const;

 private:
  std::vector<Octonion> coeffs_;
  int low_ = 0;
};

/// Lowers a polynomial expression; nullopt when an Eta node is reachable.
std::optional<PolyRep> lower(const SliceExpr& e);

/// The zero-tolerance used by the division algorithms.
double polynomial_zero_tolerance(const PolyRep& p);

/// g with (x - y) * g = p. Throws NotAZero when p(y) is not zero to the
/// zero-tolerance.
PolyRep factor_zero(const PolyRep& p, const Octonion& y);

/// x^2 - x t(y) + n(y).
PolyRep delta(const Octonion& y);

/// Division by a real-coefficient polynomial; returns nullopt unless the
/// remainder vanishes to tol.
std::optional<PolyRep> divide_exact_real(const PolyRep& p, const std::vector<double>& divisor, double tol);

struct Multiplicities {
  /// Only defined for real y.
  std::optional<int> classical;
  int spherical = 0;
  int total = 0;
};

/// Throws ZeroFunction when p vanishes to tolerance.
Multiplicities multiplicities(const PolyRep& p, const Octonion& y);

/// Marker for the total multiplicity of functions with N(f) identically zero.
inline constexpr int kInfiniteMultiplicity = -1;

/// Exact coefficient test after lowering, else 64 fixed-seed samples of the
/// stem with alpha in [-2, 2], beta in [0.1, 2], all below tol.
bool is_identically_zero(const SliceExpr& e, double tol = 1e-9);

/// Complex scalar carried by a stem whose values lie in R (x) C.
inline std::complex<double> real_stem_value(const ComplexifiedOctonion& F) { return {F.re[0], F.im[0]}; }

}  // namespace octoslice
