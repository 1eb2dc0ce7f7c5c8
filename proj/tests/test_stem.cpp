#include "octoslice/error.hpp"
#include "octoslice/stem.hpp"
#include "support.hpp"

using namespace octoslice;
using namespace octoslice::units;
using testing::close;
using testing::kind_of;

namespace {

const SliceExpr X = SliceExpr::variable();

SliceExpr c(const Octonion& v) { return SliceExpr::constant(v); }

bool stems_close(const ComplexifiedOctonion& a, const ComplexifiedOctonion& b, double tol) {
  return close(a.re, b.re, tol) && close(a.im, b.im, tol);
}

bool polys_close(const PolyRep& a, const PolyRep& b, double tol) {
  const int lo = std::min(a.low(), b.low()), hi = std::max(a.high(), b.high());
  for (int t = lo; t <= hi; ++t) {
    if (!close(a.coeff(t), b.coeff(t), tol)) return false;
  }
  return true;
}


SliceExpr random_expr(testing::Rng& rng) {
  const ImaginaryUnit u = testing::random_unit(rng);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return testing::random_poly(rng, 3).to_expr();
    case 1:
      return X * c(testing::random_octonion(rng)) + SliceExpr::eta(u) * c(testing::random_octonion(rng));
    case 2:
      return SliceExpr::pow(X, 2) * SliceExpr::eta(u) + c(testing::random_octonion(rng));
    default:
      return SliceExpr::pow(X, -1) * c(testing::random_octonion(rng)) + X;
  }
}

}  // namespace

TEST_CASE("stem evaluation examples") {
  const ComplexifiedOctonion sq = eval_stem(SliceExpr::pow(X, 2), 0.0, 1.0);
  CHECK(sq.re == Octonion(-1.0));
  CHECK(sq.im.abs() == 0.0);

  const SliceExpr eta = SliceExpr::eta(ImaginaryUnit(-i));
  const ComplexifiedOctonion e = eval_stem(eta, 0.0, 1.0);
  CHECK(close(e.re, Octonion(0.5), 1e-15));
  CHECK(close(e.im, -0.5 * i, 1e-15));
  CHECK(close(eval(eta, i), one, 1e-15));
  CHECK(eval(eta, -i).abs() <= 1e-15);
  CHECK(kind_of([&] { eval(eta, Octonion(2.0)); }) == ErrorKind::DomainError);

  const Octonion y = parse_octonion("1+2j");
  testing::Rng rng(21);
  const ImaginaryUnit u = testing::random_unit(rng);
  CHECK(close(eval(X - c(y), 3.0 + 4.0 * u.value()), (3.0 + 4.0 * u.value()) - y, 1e-15));

  CHECK(eval(SliceExpr::pow(X, 2), parse_octonion("2+3i")) == parse_octonion("-5+12i"));
}

TEST_CASE("2x eta(-i) closed form") {
  const SliceExpr f = c(Octonion(2.0)) * X * SliceExpr::eta(ImaginaryUnit(-i));
  testing::Rng rng(22);
  for (int n = 0; n < 100; ++n) {
    const double alpha = testing::uniform(rng, -2, 2), beta = testing::uniform(rng, 0.1, 2);
    const Octonion J = testing::random_unit(rng).value();
    const Octonion expect = alpha + beta * i + J * (beta - alpha * i);
    CHECK(close(eval(f, alpha + beta * J), expect, 1e-13));
  }
}

TEST_CASE("normal function of x - y") {
  const Octonion y = parse_octonion("1+i");
  const SliceExpr n = normal(X - c(y));
  testing::Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const Octonion x = testing::random_nonreal(rng);
    CHECK(close(eval(n, x), x * x - 2.0 * x + 2.0, 1e-13));
  }
  const auto lowered = lower(n);
  REQUIRE(lowered.has_value());
  CHECK(polys_close(*lowered, delta(y), 1e-15));
  CHECK(polys_close(delta(y), PolyRep({Octonion(2.0), Octonion(-2.0), one}), 0.0));
}

TEST_CASE("slice product, conjugate and normal are stem operations") {
  testing::Rng rng(24);
  for (int n = 0; n < 200; ++n) {
    const SliceExpr f = random_expr(rng), g = random_expr(rng);
    const double alpha = testing::uniform(rng, -1.5, 1.5), beta = testing::uniform(rng, 0.2, 1.5);
    const ComplexifiedOctonion F = eval_stem(f, alpha, beta), G = eval_stem(g, alpha, beta);
    CHECK(stems_close(eval_stem(slice_mul(f, g), alpha, beta), F * G, 1e-12));
    CHECK(stems_close(eval_stem(f * g, alpha, beta), F * G, 1e-12));
    CHECK(stems_close(eval_stem(conj(f), alpha, beta), F.conj(), 1e-14));
    CHECK(stems_close(eval_stem(conj(slice_mul(f, g)), alpha, beta), eval_stem(slice_mul(conj(g), conj(f)), alpha, beta),
                      1e-12));
    const ComplexifiedOctonion N = eval_stem(normal(f), alpha, beta);
    CHECK(stems_close(N, F * F.conj(), 1e-12));
    CHECK(N.re.imag().abs() <= 1e-12 * (1.0 + N.re.abs()));
    CHECK(N.im.imag().abs() <= 1e-12 * (1.0 + N.im.abs()));
    // Reflected stem.
    CHECK(stems_close(eval_stem(f, alpha, -beta), F.reflect(), 1e-14));
  }
}

TEST_CASE("spherical value and derivative") {
  testing::Rng rng(25);
  for (int n = 0; n < 200; ++n) {
    const SliceExpr f = random_expr(rng);
    const Octonion x = testing::random_nonreal(rng);
    const Octonion vs = spherical_value(f, x), sd = spherical_derivative(f, x);
    CHECK(close(eval(f, x), vs + x.imag() * sd, 1e-12));
    const SlicePoint p = SlicePoint::decompose(x);
    const ComplexifiedOctonion F = eval_stem(f, p.alpha, p.beta);
    CHECK(close(vs, F.re, 1e-12));
    CHECK(close(sd, F.im / p.beta, 1e-12));
    // Both are constant on the sphere of x.
    const Octonion y = p.alpha + p.beta * testing::random_unit(rng).value();
    CHECK(close(spherical_value(f, y), vs, 1e-12));
    CHECK(close(spherical_derivative(f, y), sd, 1e-12));
  }
  CHECK(kind_of([] { spherical_derivative(SliceExpr::pow(X, 2), Octonion(1.5)); }) == ErrorKind::RealPoint);
}

TEST_CASE("slice derivative matches the complex derivative of the stem") {
  testing::Rng rng(26);
  const double h = 1e-6;
  for (int n = 0; n < 200; ++n) {
    const SliceExpr f = random_expr(rng);
    const SliceExpr df = slice_derivative(f);
    const double alpha = testing::uniform(rng, -1.5, 1.5), beta = testing::uniform(rng, 0.2, 1.5);
    const ComplexifiedOctonion fd =
        (eval_stem(f, alpha + h, beta) - eval_stem(f, alpha - h, beta)) / (2.0 * h);
    const ComplexifiedOctonion fd_beta =
        (eval_stem(f, alpha, beta + h) - eval_stem(f, alpha, beta - h)) / (2.0 * h);
    const ComplexifiedOctonion D = eval_stem(df, alpha, beta);
    CHECK(stems_close(D, fd, 1e-6));
    // Cauchy-Riemann: dF/dbeta = i dF/dalpha.
    CHECK(stems_close(fd_beta, ComplexifiedOctonion(-D.im, D.re), 1e-6));
    CHECK(stems_close(eval_stem(SliceExpr::cderiv(f), alpha, beta), D, 0.0));
  }
}

TEST_CASE("Leibniz rules") {
  testing::Rng rng(27);
  for (int n = 0; n < 200; ++n) {
    const SliceExpr f = random_expr(rng), g = random_expr(rng);
    const double alpha = testing::uniform(rng, -1.5, 1.5), beta = testing::uniform(rng, 0.2, 1.5);
    const ComplexifiedOctonion lhs = eval_stem(slice_derivative(slice_mul(f, g)), alpha, beta);
    const ComplexifiedOctonion rhs = eval_stem(slice_derivative(f), alpha, beta) * eval_stem(g, alpha, beta) +
                                     eval_stem(f, alpha, beta) * eval_stem(slice_derivative(g), alpha, beta);
    CHECK(stems_close(lhs, rhs, 1e-11));

    const Octonion x = alpha + beta * testing::random_unit(rng).value();
    const Octonion fs = spherical_derivative(f, x), gs = spherical_derivative(g, x);
    const Octonion fv = spherical_value(f, x), gv = spherical_value(g, x);
    const Octonion n2 = x.imag().norm() * Octonion(1.0);
    CHECK(close(spherical_derivative(slice_mul(f, g), x), fs * gv + fv * gs, 1e-11));
    CHECK(close(spherical_value(slice_mul(f, g), x), fv * gv - n2 * (fs * gs), 1e-11));
  }
}

TEST_CASE("eta idempotents") {
  testing::Rng rng(28);
  for (int n = 0; n < 50; ++n) {
    const ImaginaryUnit u = testing::random_unit(rng);
    const ImaginaryUnit minus(-u.value());
    const SliceExpr e = SliceExpr::eta(u), e_minus = SliceExpr::eta(minus);
    const double alpha = testing::uniform(rng, -2, 2), beta = testing::uniform(rng, 0.1, 2);
    CHECK(stems_close(eval_stem(e * e, alpha, beta), eval_stem(e, alpha, beta), 1e-14));
    CHECK(stems_close(eval_stem(e * e_minus, alpha, beta), ComplexifiedOctonion(0.0), 1e-14));
    CHECK(stems_close(eval_stem(e + e_minus, alpha, beta), ComplexifiedOctonion(1.0), 1e-14));
  }
  CHECK(is_identically_zero(SliceExpr::eta(ImaginaryUnit(i)) * SliceExpr::eta(ImaginaryUnit(-i))));
  CHECK_FALSE(is_identically_zero(SliceExpr::eta(ImaginaryUnit(i))));
  CHECK(SliceExpr::eta(ImaginaryUnit(i)).excludes_real_axis());
  CHECK_FALSE(SliceExpr::pow(X, 3).excludes_real_axis());
}

TEST_CASE("polynomial representation") {
  testing::Rng rng(29);
  for (int n = 0; n < 100; ++n) {
    const PolyRep p = testing::random_poly(rng, 4), q = testing::random_poly(rng, 3);
    const Octonion x = testing::random_nonreal(rng);
    CHECK(p.to_expr().is_polynomial());
    CHECK(close(eval(p.to_expr(), x), p.eval(x), 1e-13));
    const auto lowered = lower(p.to_expr());
    REQUIRE(lowered.has_value());
    CHECK(polys_close(*lowered, p, 1e-15));
    const SlicePoint sp = SlicePoint::decompose(x);
    CHECK(stems_close((p * q).eval_stem(sp.alpha, sp.beta), p.eval_stem(sp.alpha, sp.beta) * q.eval_stem(sp.alpha, sp.beta),
                      1e-12));
    CHECK(stems_close(p.derivative().eval_stem(sp.alpha, sp.beta),
                      eval_stem(slice_derivative(p.to_expr()), sp.alpha, sp.beta), 1e-12));
    CHECK(polys_close(p.normal(), p * p.conj(), 1e-14));
  }
  CHECK_FALSE(lower(SliceExpr::eta(ImaginaryUnit(j))).has_value());
  CHECK(PolyRep({Octonion(), one, Octonion()}).trimmed().degree() == 1);
  CHECK(PolyRep().degree() == -1);
  CHECK(kind_of([] { SliceExpr::pow(X + c(one), -1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { eval(SliceExpr::pow(X, -1), Octonion()); }) == ErrorKind::DomainError);
}

TEST_CASE("factoring out zeros") {
  const PolyRep sq_plus_one({one, Octonion(), one});
  CHECK(polys_close(factor_zero(sq_plus_one, i), PolyRep({i, one}), 1e-15));

  const Octonion y = parse_octonion("1+j");
  CHECK(polys_close(factor_zero(delta(y), y), PolyRep({-(one - j), one}), 1e-15));

  testing::Rng rng(30);
  for (int n = 0; n < 50; ++n) {
    const Octonion yy = testing::random_octonion(rng), cc = testing::random_octonion(rng);
    CHECK(polys_close(factor_zero(PolyRep({-(yy * cc), cc}), yy), PolyRep({cc}), 1e-13));
    // (x - y) * g reproduces p for a constructed zero.
    const PolyRep g = testing::random_poly(rng, 3);
    const PolyRep p = PolyRep({-yy, one}) * g;
    CHECK(polys_close(PolyRep({-yy, one}) * factor_zero(p, yy), p, 1e-12));
  }
  CHECK(kind_of([&] { factor_zero(sq_plus_one, one); }) == ErrorKind::NotAZero);
}

TEST_CASE("multiplicities") {
  const Multiplicities sq = multiplicities(PolyRep({Octonion(), Octonion(), one}), Octonion());
  REQUIRE(sq.classical.has_value());
  CHECK(*sq.classical == 2);
  CHECK(sq.total == 2);

  const Multiplicities d = multiplicities(PolyRep({one, Octonion(), one}), i);
  CHECK(d.spherical == 2);
  CHECK(d.total == 2);
  CHECK_FALSE(d.classical.has_value());

  const Multiplicities lin = multiplicities(PolyRep({-i, one}), i);
  CHECK(lin.spherical == 0);
  CHECK(lin.total == 1);

  const Multiplicities none = multiplicities(PolyRep({-i, one}), 2.0 * j);
  CHECK(none.total == 0);

  CHECK(kind_of([] { multiplicities(PolyRep({Octonion()}), i); }) == ErrorKind::ZeroFunction);
}

TEST_CASE("exact division by real polynomials") {
  const PolyRep p = PolyRep({Octonion(2.0), Octonion(-2.0), one}) * PolyRep({j, lk});
  const auto q = divide_exact_real(p, {2.0, -2.0, 1.0}, 1e-12);
  REQUIRE(q.has_value());
  CHECK(polys_close(*q, PolyRep({j, lk}), 1e-13));
  CHECK_FALSE(divide_exact_real(p + PolyRep::constant(one), {2.0, -2.0, 1.0}, 1e-12).has_value());
}

TEST_CASE("structural equality") {
  CHECK(structurally_equal(X * c(i), SliceExpr::mul(SliceExpr::variable(), SliceExpr::constant(i))));
  CHECK_FALSE(structurally_equal(X * c(i), c(i) * X));
}
