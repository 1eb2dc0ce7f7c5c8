#include "octoslice/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

using cdouble = std::complex<double>;

cdouble horner(const std::vector<double>& c, cdouble z) {
  cdouble out = 0.0;
  for (std::size_t t = c.size(); t-- > 0;) out = out * z + c[t];
  return out;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t t = 1; t < c.size(); ++t) d.push_back(static_cast<double>(t) * c[t]);
  return d;
}

std::vector<cdouble> companion_roots(const std::vector<double>& c) {
  const std::size_t deg = c.size() - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t t = 1; t < deg; ++t) comp(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t - 1)) = 1.0;
  for (std::size_t t = 0; t < deg; ++t) {
    comp(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(deg - 1)) = -c[t] / c[deg];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  std::vector<cdouble> roots;
  for (Eigen::Index t = 0; t < solver.eigenvalues().size(); ++t) roots.push_back(solver.eigenvalues()(t));
  return roots;
}

struct RootCluster {
  cdouble center;
  int size = 0;
};

// Single-linkage grouping of nearby eigenvalues, then Newton on the
// (size - 1)-th derivative, where a root of multiplicity `size` is simple.
std::vector<RootCluster> cluster_roots(const std::vector<cdouble>& roots, const std::vector<double>& c) {
  const std::size_t n = roots.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (label[v] >= 0) continue;
        if (std::abs(roots[u] - roots[v]) <= 1e-3 * (1.0 + std::abs(roots[u]))) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  std::vector<RootCluster> out;
  for (int g = 0; g < next; ++g) {
    RootCluster cl;
    for (std::size_t s = 0; s < n; ++s) {
      if (label[s] == g) {
        cl.center += roots[s];
        ++cl.size;
      }
    }
    cl.center /= static_cast<double>(cl.size);
    std::vector<double> d = c;
    for (int k = 1; k < cl.size; ++k) d = differentiate(d);
    const std::vector<double> dd = differentiate(d);
    cdouble z = cl.center;
    for (int it = 0; it < 50; ++it) {
      const cdouble slope = horner(dd, z);
      if (std::abs(slope) == 0.0) break;
      const cdouble step = horner(d, z) / slope;
      z -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    if (std::abs(z - cl.center) <= 1e-2 * (1.0 + std::abs(cl.center))) cl.center = z;
    out.push_back(cl);
  }
  return out;
}

std::vector<Octonion> sphere_units(int count) {
  std::mt19937_64 rng(0x73706865ULL);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Octonion> out;
  while (static_cast<int>(out.size()) < count) {
    Octonion v;
    for (std::size_t t = 1; t < 8; ++t) v[t] = g(rng);
    if (v.abs() > 1e-6) out.push_back(v / v.abs());
  }
  return out;
}

// Classifies the sphere alpha + beta S (beta > 0) for g = f - c.
FiberComponent classify_sphere(const SliceExpr& g, const SliceExpr& f, const Octonion& c, double alpha, double beta,
                               double scale) {
  const ComplexifiedOctonion G = eval_stem(g, alpha, beta);
  const Octonion vs = G.re;
  const Octonion ds = G.im / beta;
  FiberComponent comp;
  if (vs.abs() <= 1e-9 * scale && ds.abs() <= 1e-9 * scale) {
    comp.kind = FiberComponent::Kind::Sphere;
    comp.alpha = alpha;
    comp.beta = beta;
    double worst = 0.0;
    for (const Octonion& u : sphere_units(kSphereSamples)) {
      comp.samples.push_back(alpha + beta * u);
      worst = std::max(worst, (eval(f, comp.samples.back()) - c).abs());
    }
    comp.residual = worst;
    return comp;
  }
  comp.kind = FiberComponent::Kind::Point;
  if (ds.abs() == 0.0) throw Error(ErrorKind::NonConvergence, "sphere root with vanishing spherical derivative");
  comp.point = alpha - vs * inverse(ds);
  comp.residual = (eval(f, comp.point) - c).abs();
  return comp;
}

}  // namespace

std::complex<double> RestrictedNormal::operator()(std::complex<double> z) const {
  if (real_coefficients) {
    cdouble v = horner(*real_coefficients, z);
    if (low != 0) v *= std::pow(z, low);
    return v;
  }
  return real_stem_value(eval_stem(normal, z.real(), z.imag()));
}

std::complex<double> RestrictedNormal::slope(std::complex<double> z) const {
  return real_stem_value(eval_stem(derivative, z.real(), z.imag()));
}

RestrictedNormal normal_restricted(const SliceExpr& e, const Octonion& c) {
  RestrictedNormal r;
  const SliceExpr g = SliceExpr::sub(e, SliceExpr::constant(c));
  r.normal = SliceExpr::normal(g);
  r.derivative = slice_derivative(r.normal);
  if (auto q = lower(g)) {
    const PolyRep n = q->normal();
    std::vector<double> coeffs;
    for (const Octonion& a : n.coeffs()) coeffs.push_back(a[0]);
    r.real_coefficients = std::move(coeffs);
    r.low = n.low();
  }
  return r;
}

bool detect_wing(const SliceExpr& e, const Octonion& c) {
  return is_identically_zero(SliceExpr::normal(SliceExpr::sub(e, SliceExpr::constant(c))));
}

FiberResult solve_fiber(const SliceExpr& e, const Octonion& c, const FiberSearch& search) {
  const SliceExpr g = SliceExpr::sub(e, SliceExpr::constant(c));
  FiberResult result;
  const auto q = lower(g);

  if (q && search.polynomial_exact) {
    const double qtol = polynomial_zero_tolerance(*q);
    const PolyRep qt = q->trimmed(qtol);
    if (qt.is_zero()) throw Error(ErrorKind::WingPresent, "f - c vanishes identically");
    const PolyRep n = qt.normal();
    std::vector<double> coeffs;
    for (const Octonion& a : n.coeffs()) coeffs.push_back(a[0]);
    const double ntol = 1e-14 * (1.0 + n.max_abs());
    while (!coeffs.empty() && std::abs(coeffs.back()) <= ntol) coeffs.pop_back();
    if (coeffs.size() <= 1) return result;
    const double scale = 1.0 + c.abs() + qt.max_abs();
    for (const RootCluster& cl : cluster_roots(companion_roots(coeffs), coeffs)) {
      const cdouble z = cl.center;
      const double zscale = scale * std::pow(1.0 + std::abs(z), std::max(qt.high(), 1));
      if (qt.low() < 0 && std::abs(z) <= 1e-9) continue;
      if (std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z))) {
        FiberComponent comp;
        comp.kind = FiberComponent::Kind::Point;
        comp.point = Octonion(z.real());
        comp.total_multiplicity = multiplicities(qt, comp.point).total;
        comp.residual = (eval(e, comp.point) - c).abs();
        result.components.push_back(comp);
        continue;
      }
      if (z.imag() < 0.0) continue;
      FiberComponent comp = classify_sphere(g, e, c, z.real(), z.imag(), zscale);
      const Octonion where = comp.kind == FiberComponent::Kind::Sphere ? z.real() + z.imag() * units::i : comp.point;
      comp.total_multiplicity = multiplicities(qt, where).total;
      result.components.push_back(comp);
    }
    return result;
  }

  const RestrictedNormal rn = normal_restricted(e, c);
  if (is_identically_zero(rn.normal)) throw Error(ErrorKind::WingPresent, "N(f - c) vanishes identically");
  std::vector<cdouble> roots;
  for (int sa = 0; sa < search.seeds_alpha; ++sa) {
    for (int sb = 0; sb < search.seeds_beta; ++sb) {
      const double ta = search.seeds_alpha == 1 ? 0.5 : static_cast<double>(sa) / (search.seeds_alpha - 1);
      const double tb = search.seeds_beta == 1 ? 0.5 : static_cast<double>(sb) / (search.seeds_beta - 1);
      cdouble z(search.alpha_min + ta * (search.alpha_max - search.alpha_min),
                search.beta_min + tb * (search.beta_max - search.beta_min));
      bool converged = false;
      try {
        const double seed_scale = 1.0 + std::abs(rn(z));
        for (int it = 0; it < 60; ++it) {
          const cdouble v = rn(z);
          if (std::abs(v) <= 1e-13 * seed_scale) {
            converged = true;
            break;
          }
          const cdouble d = rn.slope(z);
          if (std::abs(d) == 0.0) break;
          const cdouble step = v / d;
          double lambda = 1.0;
          cdouble trial = z - step;
          for (int h = 0; h < 30; ++h) {
            trial = z - lambda * step;
            if (trial.imag() > 0.0 && std::abs(rn(trial)) < std::abs(v)) break;
            lambda *= 0.5;
          }
          if (trial.imag() <= 0.0) break;
          z = trial;
          if (std::abs(lambda * step) <= 1e-15 * (1.0 + std::abs(z))) {
            converged = std::abs(rn(z)) <= 1e-8 * seed_scale;
            break;
          }
        }
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::DomainError) throw;
        converged = false;
      }
      if (!converged) {
        ++result.nonconverged_seeds;
        continue;
      }
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](cdouble r) { return std::abs(r - z) <= 1e-6; });
      if (!seen) roots.push_back(z);
    }
  }
  const double scale = 1.0 + c.abs();
  for (const cdouble z : roots) {
    FiberComponent comp = classify_sphere(g, e, c, z.real(), z.imag(), scale);
    // Root order of the restricted normal function from successive derivatives.
    SliceExpr d = rn.normal;
    std::vector<double> mags;
    for (int k = 1; k <= 6; ++k) {
      d = slice_derivative(d);
      mags.push_back(std::abs(real_stem_value(eval_stem(d, z.real(), z.imag()))));
    }
    const double tau = 1e-6 * (1.0 + *std::max_element(mags.begin(), mags.end()));
    int order = 6;
    for (int k = 0; k < 6; ++k) {
      if (mags[static_cast<std::size_t>(k)] > tau) {
        order = k + 1;
        break;
      }
    }
    comp.total_multiplicity = order;
    result.components.push_back(comp);
  }
  return result;
}

Octonion wing_parametrization(const SliceExpr& e, const Octonion& c, const ImaginaryUnit& unit, std::complex<double> z) {
  const double alpha = z.real();
  const double beta = z.imag();
  if (!(beta > 0.0)) throw Error(ErrorKind::DomainError, "wing charts live on the upper half-plane");
  const Octonion y = alpha + beta * unit.value();
  const Octonion vs = spherical_value(e, y);
  const Octonion ds = spherical_derivative(e, y);
  if (ds.abs() > 1e-12 * (1.0 + vs.abs() + c.abs())) return alpha + (c - vs) * inverse(ds);

  const auto q = lower(SliceExpr::sub(e, SliceExpr::constant(c)));
  if (!q) throw Error(ErrorKind::DegenerateSphereUnsupported, "degenerate sphere needs a polynomial expression");
  const double tol = polynomial_zero_tolerance(*q);
  const std::vector<double> d{alpha * alpha + beta * beta, -2.0 * alpha, 1.0};
  PolyRep h = q->trimmed(tol);
  int n = 0;
  while (!h.is_zero(tol)) {
    auto next = divide_exact_real(h, d, tol);
    if (!next) break;
    h = *next;
    ++n;
  }
  if (n == 0 || h.is_zero(tol)) {
    throw Error(ErrorKind::DegenerateSphereUnsupported, "no Delta factorization at this sphere");
  }
  const ComplexifiedOctonion H = h.eval_stem(alpha, beta);
  const Octonion hs = H.im / beta;
  if (hs.abs() <= 1e-12 * (1.0 + H.re.abs())) {
    throw Error(ErrorKind::DegenerateSphereUnsupported, "quotient is degenerate on the sphere as well");
  }
  return alpha - H.re * inverse(hs);
}

std::pair<Octonion, Octonion> wing_tangent(const SliceExpr& e, const Octonion& c, const ImaginaryUnit& unit,
                                           std::complex<double> z) {
  const Octonion x = wing_parametrization(e, c, unit, z);
  const SlicePoint sp = SlicePoint::decompose(x);
  const Octonion& J = sp.unit.value();
  const Octonion a = eval(slice_derivative(e), x);
  const Octonion b = spherical_derivative(e, x);
  if (b.abs() <= 1e-12 * (1.0 + a.abs())) throw Error(ErrorKind::DegeneratePoint, "spherical derivative vanishes");
  const Octonion binv = inverse(b);
  return {1.0 - a * binv, J - (J * a) * binv};
}

BranchTestResult branch_test(const SliceExpr& e, const Octonion& x0) {
  const auto p = lower(e);
  if (!p) throw Error(ErrorKind::NotLowerable, "branch test needs a polynomial expression");
  const PolyRep q = *p - PolyRep::constant(p->eval(x0));
  BranchTestResult r;
  r.total_multiplicity = multiplicities(q, x0).total;
  r.singular = r.total_multiplicity >= 2;
  return r;
}

}  // namespace octoslice
