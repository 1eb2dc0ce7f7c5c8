#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "octoslice/error.hpp"
#include "octoslice/octonion.hpp"
#include "octoslice/slice_point.hpp"
#include "octoslice/stem.hpp"

namespace testing {

using octoslice::ImaginaryUnit;
using octoslice::Octonion;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Octonion random_octonion(Rng& rng, double half = 1.0) {
  Octonion x;
  for (std::size_t t = 0; t < 8; ++t) x[t] = uniform(rng, -half, half);
  return x;
}

inline Octonion random_imaginary(Rng& rng) {
  Octonion x = random_octonion(rng);
  x[0] = 0.0;
  return x;
}

inline ImaginaryUnit random_unit(Rng& rng) {
  std::normal_distribution<double> g;
  Octonion v;
  do {
    for (std::size_t t = 1; t < 8; ++t) v[t] = g(rng);
  } while (v.abs() < 1e-3);
  return ImaginaryUnit(v / v.abs());
}

inline Octonion random_nonreal(Rng& rng) {
  return uniform(rng, -1.0, 1.0) + uniform(rng, 0.1, 2.0) * random_unit(rng).value();
}

inline octoslice::PolyRep random_poly(Rng& rng, int degree) {
  std::vector<Octonion> c;
  for (int t = 0; t <= degree; ++t) c.push_back(random_octonion(rng));
  return octoslice::PolyRep(c);
}

/// |a - b| <= tol (1 + |b|).
inline bool close(const Octonion& a, const Octonion& b, double tol) { return (a - b).abs() <= tol * (1.0 + b.abs()); }

/// Hamilton product on quaternion coefficient arrays (1, i, j, k).
inline std::array<double, 4> hamilton(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

/// Independent product oracle: x = q1 + l q2 over Hamilton quaternions with
/// (a + l b)(c + l d) = ac - d b^c + l(a^c d + c b).
inline Octonion oracle_mul(const Octonion& x, const Octonion& y) {
  const std::array<double, 4> a{x[0], x[1], x[2], x[3]}, b{x[4], x[5], x[6], x[7]};
  const std::array<double, 4> c{y[0], y[1], y[2], y[3]}, d{y[4], y[5], y[6], y[7]};
  const auto qc = [](const std::array<double, 4>& q) { return std::array<double, 4>{q[0], -q[1], -q[2], -q[3]}; };
  const auto ac = hamilton(a, c);
  const auto dbc = hamilton(d, qc(b));
  const auto acd = hamilton(qc(a), d);
  const auto cb = hamilton(c, b);
  Octonion z;
  for (std::size_t t = 0; t < 4; ++t) {
    z[t] = ac[t] - dbc[t];
    z[t + 4] = acd[t] + cb[t];
  }
  return z;
}

/// Kind of the octoslice::Error thrown by fn; fails the test when nothing is thrown.
inline octoslice::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const octoslice::Error& err) {
    return err.kind();
  }
  FAIL("expected an error");
  return octoslice::ErrorKind::InvalidArgument;
}

}  // namespace testing
