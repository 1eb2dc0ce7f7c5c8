#include "octoslice/differential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

constexpr double kZeroTol = 1e-12;
constexpr double kRelTol = 1e-9;
constexpr double kScanWidth = 1e-9;

struct Derivs {
  SlicePoint where;
  Octonion value;
  Octonion cderiv;
  std::optional<Octonion> sderiv;
};

Derivs derivatives(const SliceExpr& e, const SliceExpr& de, const Octonion& x0) {
  Derivs d;
  d.where = SlicePoint::decompose(x0);
  const ComplexifiedOctonion F = eval_stem(e, d.where.alpha, d.where.beta);
  const Octonion& J = d.where.unit.value();
  d.value = apply_unit(F, J);
  d.cderiv = apply_unit(eval_stem(de, d.where.alpha, d.where.beta), J);
  if (d.where.beta > 0.0) d.sderiv = F.im / d.where.beta;
  return d;
}

Derivs derivatives(const SliceExpr& e, const Octonion& x0) { return derivatives(e, slice_derivative(e), x0); }

DifferentialReport classify(const Derivs& d) {
  DifferentialReport r;
  r.point = d.where.reconstruct();
  r.cderiv = d.cderiv;
  r.sderiv = d.sderiv;
  const Octonion& a = d.cderiv;
  if (!d.sderiv) {
    r.det = std::pow(a.norm(), 4);
    const bool zero = a.abs() <= kZeroTol * (1.0 + d.value.abs());
    r.rank_class = zero ? RankClass::Zero : RankClass::Full;
    r.det_tolerance = zero ? r.det : 0.0;
    r.singular = zero;
    return r;
  }
  const Octonion& b = *d.sderiv;
  const Octonion& J = d.where.unit.value();
  r.det = jacobian_det_from(a, b, J);
  const double la = a.abs();
  const double lb = b.abs();
  const bool b_zero = lb <= kZeroTol * (1.0 + la);
  const bool a_zero = la <= kZeroTol * (1.0 + lb);
  if (b_zero) {
    r.rank_class = a_zero ? RankClass::Zero : RankClass::Plane;
  } else if (a_zero) {
    r.rank_class = RankClass::Hyper;
  } else {
    // Normalized size of the C_J component of a b^c; it vanishes exactly
    // when a b^{-1} lies in the orthogonal complement of C_J.
    const Octonion abc = a * b.conj();
    const double rho = std::hypot(abc.real(), dot(abc, J)) / (la * lb);
    r.rank_class = rho <= kRelTol ? RankClass::Hyper : RankClass::Full;
  }
  r.det_tolerance = kRelTol * kRelTol * la * la * std::pow(lb, 6);
  r.singular = r.rank_class != RankClass::Full;
  return r;
}

}  // namespace

std::string_view to_string(RankClass r) {
  switch (r) {
    case RankClass::Zero: return "Zero";
    case RankClass::Plane: return "Plane";
    case RankClass::Hyper: return "Hyper";
    case RankClass::Full: return "Full";
  }
  return "Full";
}

int rank_of(RankClass r) {
  switch (r) {
    case RankClass::Zero: return 0;
    case RankClass::Plane: return 2;
    case RankClass::Hyper: return 6;
    case RankClass::Full: return 8;
  }
  return 8;
}

Octonion differential_apply(const SliceExpr& e, const Octonion& x0, const Octonion& v) {
  const Derivs d = derivatives(e, x0);
  if (!d.sderiv) return v * d.cderiv;
  const Octonion vc = project_slice(v, d.where.unit.value());
  return vc * d.cderiv + (v - vc) * *d.sderiv;
}

Matrix8 jacobian_matrix(const SliceExpr& e, const Octonion& x0) {
  const Derivs d = derivatives(e, x0);
  const SplittingBasis basis(d.where.unit);
  Matrix8 m;
  for (std::size_t k = 0; k < 8; ++k) {
    const Octonion& v = basis[k];
    Octonion image;
    if (!d.sderiv) {
      image = v * d.cderiv;
    } else {
      const Octonion vc = project_slice(v, d.where.unit.value());
      image = vc * d.cderiv + (v - vc) * *d.sderiv;
    }
    const auto c = basis.coordinates(image);
    for (std::size_t t = 0; t < 8; ++t) m(static_cast<int>(t), static_cast<int>(k)) = c[t];
  }
  return m;
}

Matrix8 finite_difference_jacobian(const SliceExpr& e, const Octonion& x0, double h) {
  const SlicePoint p = SlicePoint::decompose(x0);
  const SplittingBasis basis(p.unit);
  Matrix8 m;
  for (std::size_t k = 0; k < 8; ++k) {
    const Octonion diff = (eval(e, x0 + h * basis[k]) - eval(e, x0 - h * basis[k])) / (2.0 * h);
    const auto c = basis.coordinates(diff);
    for (std::size_t t = 0; t < 8; ++t) m(static_cast<int>(t), static_cast<int>(k)) = c[t];
  }
  return m;
}

double jacobian_det_from(const Octonion& cderiv, const Octonion& sderiv, const Octonion& unit) {
  const Octonion abc = cderiv * sderiv.conj();
  const double r0 = abc.real();
  const double r1 = (unit * abc).real();
  return sderiv.norm() * sderiv.norm() * (r0 * r0 + r1 * r1);
}

double jacobian_det(const SliceExpr& e, const Octonion& x0) { return classify(derivatives(e, x0)).det; }

RankClass rank_class(const SliceExpr& e, const Octonion& x0) { return classify(derivatives(e, x0)).rank_class; }

bool is_singular(const SliceExpr& e, const Octonion& x0) { return classify(derivatives(e, x0)).singular; }

DifferentialReport differential_report(const SliceExpr& e, const Octonion& x0) {
  return classify(derivatives(e, x0));
}

Matrix8 paired_basis_matrix(const Octonion& a, const Octonion& b, const SplittingBasis& basis) {
  const Octonion& J = basis.unit().value();
  std::array<Octonion, 8> cols;
  cols[0] = a;
  cols[1] = J * a;
  for (std::size_t t = 2; t < 8; ++t) cols[t] = basis[t] * b;
  Matrix8 m;
  for (std::size_t k = 0; k < 8; ++k) {
    const auto c = basis.coordinates(cols[k]);
    for (std::size_t t = 0; t < 8; ++t) m(static_cast<int>(t), static_cast<int>(k)) = c[t];
  }
  return m;
}

std::vector<SingularPoint> scan_singular_set(const SliceExpr& e, const ScanRegion& region) {
  const std::size_t dims = region.basis_dirs.size();
  if (dims == 0 || dims > 4 || region.half_widths.size() != dims || region.counts.size() != dims) {
    throw Error(ErrorKind::EmptyBox, "region needs 1 to 4 directions with matching widths and counts");
  }
  for (std::size_t k = 0; k < dims; ++k) {
    if (region.counts[k] < 1 || !(region.half_widths[k] >= 0.0)) {
      throw Error(ErrorKind::EmptyBox, "region has an empty axis");
    }
  }
  const SliceExpr de = slice_derivative(e);

  const auto grid_value = [&](std::size_t axis, int index) {
    const int n = region.counts[axis];
    if (n == 1) return 0.0;
    return -region.half_widths[axis] + 2.0 * region.half_widths[axis] * index / (n - 1);
  };
  const auto point_at = [&](const std::vector<double>& t) {
    Octonion x = region.center;
    for (std::size_t k = 0; k < dims; ++k) x += t[k] * region.basis_dirs[k];
    return x;
  };
  const auto det_at = [&](const Octonion& x) {
    try {
      return classify(derivatives(e, de, x)).det;
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::DomainError) return std::numeric_limits<double>::infinity();
      throw;
    }
  };

  std::vector<SingularPoint> found;
  const double dedupe = 1e-6;
  const auto accept = [&](const Octonion& x) {
    for (const SingularPoint& s : found) {
      if ((s.point - x).abs() <= dedupe) return;
    }
    try {
      const DifferentialReport r = classify(derivatives(e, de, x));
      if (r.det > region.accept_det) return;
      found.push_back({x, r.det, r.cderiv, r.sderiv});
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DomainError) throw;
    }
  };

  for (std::size_t axis = 0; axis < dims; ++axis) {
    const int n = region.counts[axis];
    // Enumerate every line parallel to `axis`.
    std::vector<int> other(dims, 0);
    while (true) {
      std::vector<double> t(dims);
      for (std::size_t k = 0; k < dims; ++k) t[k] = k == axis ? 0.0 : grid_value(k, other[k]);
      std::vector<double> vals(static_cast<std::size_t>(n));
      std::vector<double> ts(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) {
        t[axis] = grid_value(axis, s);
        ts[static_cast<std::size_t>(s)] = t[axis];
        vals[static_cast<std::size_t>(s)] = det_at(point_at(t));
      }
      for (int s = 0; s < n; ++s) {
        const double v = vals[static_cast<std::size_t>(s)];
        if (!std::isfinite(v)) continue;
        const double left = s > 0 ? vals[static_cast<std::size_t>(s - 1)] : std::numeric_limits<double>::infinity();
        const double right = s + 1 < n ? vals[static_cast<std::size_t>(s + 1)] : std::numeric_limits<double>::infinity();
        if (!(v <= left && v <= right) || (v == left && s > 0)) continue;
        double lo = s > 0 ? ts[static_cast<std::size_t>(s - 1)] : ts[static_cast<std::size_t>(s)];
        double hi = s + 1 < n ? ts[static_cast<std::size_t>(s + 1)] : ts[static_cast<std::size_t>(s)];
        const auto f = [&](double u) {
          t[axis] = u;
          return det_at(point_at(t));
        };
        // Golden-section search for the minimum of det (det >= 0, so minima
        // rather than sign changes locate the singular set).
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - g * (hi - lo);
        double d = lo + g * (hi - lo);
        double fc = f(c);
        double fd = f(d);
        while (hi - lo > kScanWidth) {
          if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
          } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
          }
        }
        double best = 0.5 * (lo + hi);
        if (v < f(best)) best = ts[static_cast<std::size_t>(s)];
        t[axis] = best;
        accept(point_at(t));
      }
      // Advance the odometer over the remaining axes.
      std::size_t k = 0;
      for (; k < dims; ++k) {
        if (k == axis) continue;
        if (++other[k] < region.counts[k]) break;
        other[k] = 0;
      }
      if (k == dims) break;
    }
  }
  return found;
}

}  // namespace octoslice
