#include "octoslice/stem.hpp"

#include <algorithm>
#include <random>

#include "octoslice/error.hpp"

namespace octoslice {

struct SliceExpr::Node {
  Kind kind = Kind::Variable;
  Octonion value;
  int exponent = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool has_eta = false;
  bool excludes_real = false;
};

namespace {

using NodePtr = std::shared_ptr<const SliceExpr::Node>;

std::complex<double> cpow_int(std::complex<double> z, int n) {
  if (n < 0) {
    if (z == std::complex<double>(0.0, 0.0)) throw Error(ErrorKind::DomainError, "negative power at the origin");
    return 1.0 / cpow_int(z, -n);
  }
  std::complex<double> out(1.0, 0.0);
  for (int t = 0; t < n; ++t) out *= z;
  return out;
}

bool is_zero_const(const SliceExpr& e) { return e.kind() == SliceExpr::Kind::Const && e.value() == Octonion(); }
bool is_one_const(const SliceExpr& e) { return e.kind() == SliceExpr::Kind::Const && e.value() == Octonion(1.0); }

// Folding helpers used by the symbolic derivative.
SliceExpr fold_add(const SliceExpr& l, const SliceExpr& r) {
  if (is_zero_const(l)) return r;
  if (is_zero_const(r)) return l;
  return SliceExpr::add(l, r);
}

SliceExpr fold_mul(const SliceExpr& l, const SliceExpr& r) {
  if (is_zero_const(l) || is_zero_const(r)) return SliceExpr::constant(0.0);
  if (is_one_const(l)) return r;
  if (is_one_const(r)) return l;
  if (l.kind() == SliceExpr::Kind::Const && r.kind() == SliceExpr::Kind::Const) {
    return SliceExpr::constant(l.value() * r.value());
  }
  return SliceExpr::mul(l, r);
}

SliceExpr fold_conj(const SliceExpr& e) {
  if (e.kind() == SliceExpr::Kind::Const) return SliceExpr::constant(e.value().conj());
  return SliceExpr::conjugate(e);
}

ComplexifiedOctonion stem_pow(const ComplexifiedOctonion& F, int n) {
  ComplexifiedOctonion out(1.0);
  for (int t = 0; t < n; ++t) out = out * F;
  return out;
}

}  // namespace

SliceExpr::SliceExpr() : SliceExpr(variable()) {}

SliceExpr SliceExpr::variable() {
  static const NodePtr node = std::make_shared<const Node>(Node{});
  return SliceExpr(node);
}

SliceExpr SliceExpr::constant(const Octonion& c) {
  if (!c.is_finite()) throw Error(ErrorKind::InvalidArgument, "constant must be finite");
  Node n;
  n.kind = Kind::Const;
  n.value = c;
  return SliceExpr(std::make_shared<const Node>(n));
}

SliceExpr SliceExpr::eta(const ImaginaryUnit& unit) {
  Node n;
  n.kind = Kind::Eta;
  n.value = unit.value();
  n.has_eta = true;
  n.excludes_real = true;
  return SliceExpr(std::make_shared<const Node>(n));
}

namespace {

SliceExpr::Node binary(SliceExpr::Kind kind, const NodePtr& l, const NodePtr& r) {
  SliceExpr::Node n;
  n.kind = kind;
  n.a = l;
  n.b = r;
  n.has_eta = l->has_eta || r->has_eta;
  n.excludes_real = l->excludes_real || r->excludes_real;
  return n;
}

SliceExpr::Node unary(SliceExpr::Kind kind, const NodePtr& e) {
  SliceExpr::Node n;
  n.kind = kind;
  n.a = e;
  n.has_eta = e->has_eta;
  n.excludes_real = e->excludes_real;
  return n;
}

}  // namespace

SliceExpr SliceExpr::add(const SliceExpr& l, const SliceExpr& r) {
  return SliceExpr(std::make_shared<const Node>(binary(Kind::Add, l.node_, r.node_)));
}

SliceExpr SliceExpr::sub(const SliceExpr& l, const SliceExpr& r) {
  return SliceExpr(std::make_shared<const Node>(binary(Kind::Sub, l.node_, r.node_)));
}

SliceExpr SliceExpr::mul(const SliceExpr& l, const SliceExpr& r) {
  return SliceExpr(std::make_shared<const Node>(binary(Kind::SliceMul, l.node_, r.node_)));
}

SliceExpr SliceExpr::conjugate(const SliceExpr& e) {
  return SliceExpr(std::make_shared<const Node>(unary(Kind::Conj, e.node_)));
}

SliceExpr SliceExpr::normal(const SliceExpr& e) {
  return SliceExpr(std::make_shared<const Node>(unary(Kind::Normal, e.node_)));
}

SliceExpr SliceExpr::pow(const SliceExpr& e, int n) {
  if (n < 0 && e.kind() != Kind::Variable) {
    throw Error(ErrorKind::InvalidArgument, "negative exponents are only supported on x");
  }
  Node node = unary(Kind::Pow, e.node_);
  node.exponent = n;
  if (n < 0) node.excludes_real = true;
  return SliceExpr(std::make_shared<const Node>(node));
}

SliceExpr SliceExpr::cderiv(const SliceExpr& e) {
  const SliceExpr d = slice_derivative(e);
  Node node = binary(Kind::CDeriv, e.node_, d.node_);
  return SliceExpr(std::make_shared<const Node>(node));
}

SliceExpr::Kind SliceExpr::kind() const { return node_->kind; }
const Octonion& SliceExpr::value() const { return node_->value; }
int SliceExpr::exponent() const { return node_->exponent; }

SliceExpr SliceExpr::lhs() const {
  if (!node_->a) throw Error(ErrorKind::InvalidArgument, "expression node has no children");
  return SliceExpr(node_->a);
}

SliceExpr SliceExpr::rhs() const {
  if (!node_->b || node_->kind == Kind::CDeriv) {
    throw Error(ErrorKind::InvalidArgument, "expression node has no second child");
  }
  return SliceExpr(node_->b);
}

SliceExpr SliceExpr::derivative() const {
  if (node_->kind != Kind::CDeriv) throw Error(ErrorKind::InvalidArgument, "not a derivative node");
  return SliceExpr(node_->b);
}

bool SliceExpr::is_polynomial() const { return !node_->has_eta; }
bool SliceExpr::excludes_real_axis() const { return node_->excludes_real; }

bool structurally_equal(const SliceExpr& a, const SliceExpr& b) {
  if (a.kind() != b.kind()) return false;
  using K = SliceExpr::Kind;
  switch (a.kind()) {
    case K::Variable: return true;
    case K::Const:
    case K::Eta: return a.value() == b.value();
    case K::Add:
    case K::Sub:
    case K::SliceMul: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    case K::Conj:
    case K::Normal:
    case K::CDeriv: return structurally_equal(a.lhs(), b.lhs());
    case K::Pow: return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
  }
  return false;
}

ComplexifiedOctonion eval_stem(const SliceExpr& e, double alpha, double beta) {
  using K = SliceExpr::Kind;
  switch (e.kind()) {
    case K::Variable: return {Octonion(alpha), Octonion(beta)};
    case K::Const: return {e.value(), Octonion()};
    case K::Eta: {
      if (beta == 0.0) throw Error(ErrorKind::DomainError, "eta is undefined on the real axis");
      const double s = beta > 0.0 ? 0.5 : -0.5;
      return {Octonion(0.5), s * e.value()};
    }
    case K::Add: return eval_stem(e.lhs(), alpha, beta) + eval_stem(e.rhs(), alpha, beta);
    case K::Sub: return eval_stem(e.lhs(), alpha, beta) - eval_stem(e.rhs(), alpha, beta);
    case K::SliceMul: return eval_stem(e.lhs(), alpha, beta) * eval_stem(e.rhs(), alpha, beta);
    case K::Conj: return eval_stem(e.lhs(), alpha, beta).conj();
    case K::Normal: {
      const ComplexifiedOctonion F = eval_stem(e.lhs(), alpha, beta);
      return F * F.conj();
    }
    case K::Pow: {
      const SliceExpr base = e.lhs();
      if (base.kind() == K::Variable) {
        const std::complex<double> z = cpow_int({alpha, beta}, e.exponent());
        return {Octonion(z.real()), Octonion(z.imag())};
      }
      return stem_pow(eval_stem(base, alpha, beta), e.exponent());
    }
    case K::CDeriv: return eval_stem(e.derivative(), alpha, beta);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

Octonion eval(const SliceExpr& e, const Octonion& x) {
  const SlicePoint p = SlicePoint::decompose(x);
  return apply_unit(eval_stem(e, p.alpha, p.beta), p.unit.value());
}

SliceExpr slice_mul(const SliceExpr& f, const SliceExpr& g) { return SliceExpr::mul(f, g); }
SliceExpr conj(const SliceExpr& f) { return SliceExpr::conjugate(f); }
SliceExpr normal(const SliceExpr& f) { return SliceExpr::normal(f); }

Octonion spherical_value(const SliceExpr& e, const Octonion& x) {
  const SlicePoint p = SlicePoint::decompose(x);
  return eval_stem(e, p.alpha, p.beta).re;
}

Octonion spherical_derivative(const SliceExpr& e, const Octonion& x) {
  const SlicePoint p = SlicePoint::decompose(x);
  if (p.beta == 0.0) throw Error(ErrorKind::RealPoint, "spherical derivative is undefined on the real axis");
  return eval_stem(e, p.alpha, p.beta).im / p.beta;
}

SliceExpr slice_derivative(const SliceExpr& e) {
  using K = SliceExpr::Kind;
  switch (e.kind()) {
    case K::Variable: return SliceExpr::constant(1.0);
    case K::Const:
    case K::Eta: return SliceExpr::constant(0.0);
    case K::Add: return fold_add(slice_derivative(e.lhs()), slice_derivative(e.rhs()));
    case K::Sub: {
      const SliceExpr l = slice_derivative(e.lhs());
      const SliceExpr r = slice_derivative(e.rhs());
      if (is_zero_const(r)) return l;
      if (is_zero_const(l) && r.kind() == K::Const) return SliceExpr::constant(-r.value());
      return SliceExpr::sub(l, r);
    }
    case K::SliceMul:
      return fold_add(fold_mul(slice_derivative(e.lhs()), e.rhs()), fold_mul(e.lhs(), slice_derivative(e.rhs())));
    case K::Conj: return fold_conj(slice_derivative(e.lhs()));
    case K::Normal: {
      const SliceExpr f = e.lhs();
      const SliceExpr d = slice_derivative(f);
      return fold_add(fold_mul(d, fold_conj(f)), fold_mul(f, fold_conj(d)));
    }
    case K::Pow: {
      const int n = e.exponent();
      const SliceExpr base = e.lhs();
      if (n == 0) return SliceExpr::constant(0.0);
      if (n == 1) return slice_derivative(base);
      if (base.kind() == K::Variable) {
        const SliceExpr lower_power = n - 1 == 1 ? base : SliceExpr::pow(base, n - 1);
        return fold_mul(SliceExpr::constant(static_cast<double>(n)), lower_power);
      }
      const SliceExpr rest = n - 1 == 1 ? base : SliceExpr::pow(base, n - 1);
      return fold_add(fold_mul(slice_derivative(base), rest), fold_mul(base, slice_derivative(rest)));
    }
    case K::CDeriv: return slice_derivative(e.derivative());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown expression node");
}

// ---------------------------------------------------------------------------
// PolyRep

PolyRep::PolyRep(std::vector<Octonion> coeffs, int low) : coeffs_(std::move(coeffs)), low_(low) {
  if (low_ > 0) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_), Octonion());
    low_ = 0;
  }
}

PolyRep PolyRep::monomial(int exponent, const Octonion& c) {
  if (exponent >= 0) {
    std::vector<Octonion> v(static_cast<std::size_t>(exponent) + 1);
    v.back() = c;
    return PolyRep(std::move(v));
  }
  return PolyRep({c}, exponent);
}

Octonion PolyRep::coeff(int t) const {
  if (t < low_ || t > high()) return Octonion();
  return coeffs_[static_cast<std::size_t>(t - low_)];
}

PolyRep PolyRep::trimmed(double tol) const {
  std::size_t first = 0;
  std::size_t last = coeffs_.size();
  while (last > 0 && coeffs_[last - 1].abs() <= tol) --last;
  // Only negative powers are dropped from below; nonnegative storage starts at x^0.
  while (first < last && low_ + static_cast<int>(first) < 0 && coeffs_[first].abs() <= tol) ++first;
  std::vector<Octonion> v(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                          coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
  for (Octonion& c : v) {
    if (c.abs() <= tol) c = Octonion();
  }
  return PolyRep(std::move(v), v.empty() ? 0 : low_ + static_cast<int>(first));
}

PolyRep PolyRep::trimmed() const { return trimmed(0.0); }

double PolyRep::max_abs() const {
  double m = 0.0;
  for (const Octonion& c : coeffs_) m = std::max(m, c.abs());
  return m;
}

bool PolyRep::is_zero(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [tol](const Octonion& c) { return c.abs() <= tol; });
}

int PolyRep::degree() const {
  const PolyRep t = trimmed();
  return t.coeffs_.empty() ? -1 : t.high();
}

Octonion PolyRep::eval(const Octonion& x) const {
  Octonion out;
  for (int t = low_; t <= high(); ++t) {
    const Octonion& c = coeffs_[static_cast<std::size_t>(t - low_)];
    if (c == Octonion()) continue;
    out += octoslice::pow(x, t) * c;
  }
  return out;
}

ComplexifiedOctonion PolyRep::eval_stem(double alpha, double beta) const {
  ComplexifiedOctonion out;
  for (int t = low_; t <= high(); ++t) {
    const Octonion& c = coeffs_[static_cast<std::size_t>(t - low_)];
    if (c == Octonion()) continue;
    const std::complex<double> z = cpow_int({alpha, beta}, t);
    out.re += z.real() * c;
    out.im += z.imag() * c;
  }
  return out;
}

PolyRep PolyRep::derivative() const {
  if (coeffs_.empty()) return {};
  std::vector<Octonion> v;
  const int new_low = low_ == 0 ? 0 : low_ - 1;
  for (int t = new_low; t <= high() - 1; ++t) v.push_back(static_cast<double>(t + 1) * coeff(t + 1));
  return PolyRep(std::move(v), new_low);
}

PolyRep PolyRep::conj() const {
  std::vector<Octonion> v = coeffs_;
  for (Octonion& c : v) c = c.conj();
  return PolyRep(std::move(v), low_);
}

PolyRep PolyRep::normal() const { return *this * conj(); }

PolyRep operator+(const PolyRep& a, const PolyRep& b) {
  if (a.coeffs_.empty()) return b;
  if (b.coeffs_.empty()) return a;
  const int lo = std::min(a.low_, b.low_);
  const int hi = std::max(a.high(), b.high());
  std::vector<Octonion> v;
  for (int t = lo; t <= hi; ++t) v.push_back(a.coeff(t) + b.coeff(t));
  return PolyRep(std::move(v), lo);
}

PolyRep operator-(const PolyRep& a) {
  std::vector<Octonion> v = a.coeffs_;
  for (Octonion& c : v) c = -c;
  return PolyRep(std::move(v), a.low_);
}

PolyRep operator-(const PolyRep& a, const PolyRep& b) { return a + (-b); }

PolyRep operator*(const PolyRep& a, const PolyRep& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<Octonion> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t s = 0; s < a.coeffs_.size(); ++s) {
    for (std::size_t t = 0; t < b.coeffs_.size(); ++t) v[s + t] += a.coeffs_[s] * b.coeffs_[t];
  }
  return PolyRep(std::move(v), a.low_ + b.low_);
}

SliceExpr PolyRep::to_expr() const {
  std::optional<SliceExpr> out;
  for (int t = low_; t <= high(); ++t) {
    const Octonion c = coeff(t);
    if (c == Octonion()) continue;
    SliceExpr term = SliceExpr::constant(c);
    if (t != 0) {
      const SliceExpr power = t == 1 ? SliceExpr::variable() : SliceExpr::pow(SliceExpr::variable(), t);
      term = c == Octonion(1.0) ? power : SliceExpr::mul(power, term);
    }
    out = out ? SliceExpr::add(*out, term) : term;
  }
  return out ? *out : SliceExpr::constant(0.0);
}

std::optional<PolyRep> lower(const SliceExpr& e) {
  if (!e.is_polynomial()) return std::nullopt;
  using K = SliceExpr::Kind;
  switch (e.kind()) {
    case K::Variable: return PolyRep::monomial(1);
    case K::Const: return PolyRep::constant(e.value());
    case K::Eta: return std::nullopt;
    case K::Add: return *lower(e.lhs()) + *lower(e.rhs());
    case K::Sub: return *lower(e.lhs()) - *lower(e.rhs());
    case K::SliceMul: return *lower(e.lhs()) * *lower(e.rhs());
    case K::Conj: return lower(e.lhs())->conj();
    case K::Normal: return lower(e.lhs())->normal();
    case K::Pow: {
      const SliceExpr base = e.lhs();
      if (base.kind() == K::Variable) return PolyRep::monomial(e.exponent());
      const PolyRep b = *lower(base);
      PolyRep out = PolyRep::constant(Octonion(1.0));
      for (int t = 0; t < e.exponent(); ++t) out = out * b;
      return out;
    }
    case K::CDeriv: return lower(e.lhs())->derivative();
  }
  return std::nullopt;
}

double polynomial_zero_tolerance(const PolyRep& p) { return 1e-9 * (1.0 + p.max_abs()); }

namespace {

// Quotient g of (x - y) g = p over the stored coefficient range, and the
// remainder p_0 + y g_0 (which equals p(y) times the lowest power).
PolyRep factor_impl(const PolyRep& p, const Octonion& y, Octonion* residual) {
  const std::vector<Octonion>& c = p.coeffs();
  const std::size_t d = c.size();
  if (d == 0) {
    *residual = Octonion();
    return {};
  }
  std::vector<Octonion> g(d - 1);
  if (d >= 2) {
    g[d - 2] = c[d - 1];
    for (std::size_t n = d - 2; n >= 1; --n) g[n - 1] = c[n] + y * g[n];
    *residual = c[0] + y * g[0];
  } else {
    *residual = c[0];
  }
  return PolyRep(std::move(g), p.low());
}

}  // namespace

PolyRep factor_zero(const PolyRep& p, const Octonion& y) {
  Octonion residual;
  PolyRep g = factor_impl(p, y, &residual);
  if (residual.abs() > polynomial_zero_tolerance(p)) {
    throw Error(ErrorKind::NotAZero, "the point is not a zero of the polynomial");
  }
  return g;
}

PolyRep delta(const Octonion& y) { return PolyRep({Octonion(y.norm()), Octonion(-y.trace()), Octonion(1.0)}); }

std::optional<PolyRep> divide_exact_real(const PolyRep& p, const std::vector<double>& divisor, double tol) {
  std::size_t m = divisor.size();
  while (m > 0 && divisor[m - 1] == 0.0) --m;
  if (m == 0) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  std::vector<Octonion> rem = p.coeffs();
  if (rem.size() < m) {
    for (const Octonion& c : rem) {
      if (c.abs() > tol) return std::nullopt;
    }
    return PolyRep();
  }
  const double lead = divisor[m - 1];
  std::vector<Octonion> q(rem.size() - m + 1);
  for (std::size_t s = q.size(); s-- > 0;) {
    const Octonion factor = rem[s + m - 1] / lead;
    q[s] = factor;
    for (std::size_t t = 0; t < m; ++t) rem[s + t] -= divisor[t] * factor;
  }
  for (std::size_t t = 0; t + 1 < m; ++t) {
    if (rem[t].abs() > tol) return std::nullopt;
  }
  return PolyRep(std::move(q), p.low());
}

Multiplicities multiplicities(const PolyRep& p, const Octonion& y) {
  const double tol = polynomial_zero_tolerance(p);
  if (p.is_zero(tol)) throw Error(ErrorKind::ZeroFunction, "multiplicity of the zero function");
  if (p.low() < 0 && y.norm() == 0.0) throw Error(ErrorKind::DomainError, "pole at the origin");
  const PolyRep base = p.trimmed(tol);
  Multiplicities out;

  const bool real_point = y.imag().abs() <= 1e-12 * (1.0 + y.abs());
  if (real_point) {
    const Octonion yr(y.real());
    int count = 0;
    PolyRep q = base;
    while (q.trimmed(tol).degree() >= 1 || q.low() < 0) {
      Octonion residual;
      PolyRep next = factor_impl(q, yr, &residual);
      if (residual.abs() > tol) break;
      q = next;
      ++count;
    }
    out.classical = count;
  }

  std::vector<double> d(3);
  const PolyRep dy = delta(y);
  for (int t = 0; t < 3; ++t) d[static_cast<std::size_t>(t)] = dy.coeff(t)[0];

  {
    int m = 0;
    PolyRep q = base;
    while (true) {
      auto next = divide_exact_real(q, d, tol);
      if (!next || next->is_zero(tol)) break;
      q = *next;
      ++m;
    }
    out.spherical = 2 * m;
  }
  {
    const PolyRep n = base.normal();
    const double ntol = polynomial_zero_tolerance(n);
    int m = 0;
    PolyRep q = n.trimmed(ntol);
    while (true) {
      auto next = divide_exact_real(q, d, ntol);
      if (!next || next->is_zero(ntol)) break;
      q = *next;
      ++m;
    }
    out.total = m;
  }
  return out;
}

bool is_identically_zero(const SliceExpr& e, double tol) {
  if (auto p = lower(e)) return p->is_zero(tol);
  std::mt19937_64 rng(0x6f63746fULL);
  std::uniform_real_distribution<double> alpha_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> beta_dist(0.1, 2.0);
  for (int s = 0; s < 64; ++s) {
    const double alpha = alpha_dist(rng);
    const double beta = beta_dist(rng);
    const ComplexifiedOctonion F = eval_stem(e, alpha, beta);
    if (F.re.abs() > tol || F.im.abs() > tol) return false;
  }
  return true;
}

}  // namespace octoslice
