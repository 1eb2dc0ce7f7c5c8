#include <functional>
#include <set>
#include <vector>

#include "octoslice/error.hpp"
#include "support.hpp"

using namespace octoslice;
using namespace octoslice::units;
using testing::close;
using testing::oracle_mul;
using testing::random_octonion;

TEST_CASE("basis products") {
  CHECK(i * j == k);
  CHECK(j * li == lk);
  CHECK(l * l == Octonion(-1.0));
  Octonion x = parse_octonion("3-2j+0.5lk");
  CHECK(one * x == x);
  CHECK(x * one == x);
  for (std::size_t t = 1; t < 8; ++t) CHECK(Octonion::basis(t) * Octonion::basis(t) == Octonion(-1.0));
}

TEST_CASE("product agrees with the independent oracle") {
  testing::Rng rng(1);
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(Octonion::basis(a) * Octonion::basis(b) == oracle_mul(Octonion::basis(a), Octonion::basis(b)));
    }
  }
  for (int n = 0; n < 1000; ++n) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng);
    CHECK(close(x * y, oracle_mul(x, y), 1e-14));
    CHECK(close(table_mul(x, y), x * y, 1e-14));
    CHECK(close(mul(x, y), x * y, 0.0));
  }
}

TEST_CASE("multiplication table matches basis products") {
  const auto& table = multiplication_table();
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(Octonion::basis(a) * Octonion::basis(b) == table[a][b].sign * Octonion::basis(table[a][b].index));
    }
  }
}

TEST_CASE("conjugation, norm, trace, inverse") {
  CHECK(inverse(i) == -i);
  CHECK(inverse(Octonion(2.0)) == Octonion(0.5));
  CHECK(inverse(li) == -li);
  CHECK(testing::kind_of([] { inverse(Octonion()); }) == ErrorKind::DivisionByZero);
  testing::Rng rng(2);
  for (int n = 0; n < 500; ++n) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng);
    CHECK(close(conj(x * y), conj(y) * conj(x), 1e-14));
    CHECK(close(x * inverse(x), one, 1e-12));
    CHECK(close(inverse(x * y), inverse(y) * inverse(x), 1e-10 * (1.0 + 1.0 / (x.norm() * y.norm()))));
    CHECK(std::abs(norm(x) - (x * conj(x)).real()) <= 1e-14);
    CHECK((x * conj(x)).imag().abs() <= 1e-14);
    CHECK(trace(x) == doctest::Approx((x + conj(x)).real()));
    CHECK(dot(x, y) == doctest::Approx((x * conj(y)).real()).epsilon(1e-12));
  }
}

TEST_CASE("associator examples") {
  CHECK(associator(i, i, l).abs() == 0.0);
  CHECK(associator(i, j, Octonion(3.0)).abs() == 0.0);
  const Octonion oracle = oracle_mul(oracle_mul(i, j), l) - oracle_mul(i, oracle_mul(j, l));
  CHECK(oracle == -2.0 * lk);
  CHECK(associator(i, j, l) == -2.0 * lk);
}

TEST_CASE("vector product") {
  CHECK(vector_product(i, j) == k);
  CHECK(vector_product(i, i).abs() == 0.0);
  CHECK(vector_product(j, li) == oracle_mul(j, li).imag());
  CHECK(vector_product(j, li) == lk);
  CHECK(testing::kind_of([] { vector_product(one + i, j); }) == ErrorKind::NotImaginary);
  testing::Rng rng(3);
  for (int n = 0; n < 200; ++n) {
    const Octonion v = testing::random_imaginary(rng), w = testing::random_imaginary(rng);
    const Octonion vw = vector_product(v, w);
    CHECK(std::abs(dot(vw, v)) <= 1e-14);
    CHECK(std::abs(dot(vw, w)) <= 1e-14);
    CHECK(close(vw, -vector_product(w, v), 1e-14));
  }
}

TEST_CASE("Moufang identities, norm multiplicativity and real associators") {
  testing::Rng rng(4);
  for (int n = 0; n < 10000; ++n) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng), z = random_octonion(rng);
    CHECK((z * (x * (z * y)) - ((z * x) * z) * y).abs() <= 1e-12);
    CHECK((x * (z * (y * z)) - ((x * z) * y) * z).abs() <= 1e-12);
    CHECK(((z * x) * (y * z) - (z * (x * y)) * z).abs() <= 1e-12);
    CHECK(std::abs((x * y).norm() - x.norm() * y.norm()) <= 1e-10 * (1.0 + x.norm() * y.norm()));
    CHECK(std::abs(associator(x, y, z).real()) <= 1e-12);
  }
}

TEST_CASE("Artin: words in two letters do not depend on bracketing") {
  testing::Rng rng(5);
  const std::function<std::vector<Octonion>(const std::vector<Octonion>&, std::size_t, std::size_t)> bracketings =
      [&](const std::vector<Octonion>& w, std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return std::vector<Octonion>{w[lo]};
        std::vector<Octonion> out;
        for (std::size_t split = lo + 1; split < hi; ++split) {
          for (const Octonion& a : bracketings(w, lo, split)) {
            for (const Octonion& b : bracketings(w, split, hi)) out.push_back(a * b);
          }
        }
        return out;
      };
  for (int n = 0; n < 100; ++n) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng);
    for (std::size_t len = 2; len <= 4; ++len) {
      for (unsigned mask = 0; mask < (1u << len); ++mask) {
        std::vector<Octonion> w;
        for (std::size_t t = 0; t < len; ++t) w.push_back((mask >> t) & 1u ? y : x);
        const auto values = bracketings(w, 0, len);
        for (const Octonion& v : values) CHECK((v - values.front()).abs() <= 1e-12);
      }
    }
  }
}

TEST_CASE("power associativity and integer powers") {
  testing::Rng rng(6);
  for (int n = 0; n < 100; ++n) {
    const Octonion x = random_octonion(rng);
    CHECK(close(octoslice::pow(x, 3), (x * x) * x, 1e-14));
    CHECK(close(octoslice::pow(x, 3), x * (x * x), 1e-14));
    CHECK(close(octoslice::pow(x, -2), inverse(x * x), 1e-9 / x.norm()));
    CHECK(octoslice::pow(x, 0) == one);
  }
}

TEST_CASE("splitting bases") {
  const SplittingBasis bl = splitting_basis(ImaginaryUnit(l));
  const std::array<Octonion, 8> expect_l{one, l, i, li, j, lj, k, lk};
  for (std::size_t t = 0; t < 8; ++t) CHECK(bl[t] == expect_l[t]);

  const SplittingBasis bi = splitting_basis(ImaginaryUnit(i));
  const std::array<Octonion, 8> expect_i{one, i, j, k, l, -li, -lj, lk};
  for (std::size_t t = 0; t < 8; ++t) CHECK(bi[t] == expect_i[t]);

  // Index map from splitting positions {1, J, J1, JJ1, J2, JJ2, J3, JJ3} to {1, l, i, li, j, lj, k, lk}.
  const std::array<std::size_t, 8> to_standard{0, 4, 1, 5, 2, 6, 3, 7};
  std::array<std::size_t, 8> from_standard{};
  for (std::size_t t = 0; t < 8; ++t) from_standard[to_standard[t]] = t;

  testing::Rng rng(7);
  std::vector<ImaginaryUnit> unit_list{ImaginaryUnit(i), ImaginaryUnit(l), ImaginaryUnit(-lk)};
  for (int n = 0; n < 50; ++n) unit_list.push_back(testing::random_unit(rng));
  for (const ImaginaryUnit& unit : unit_list) {
    const SplittingBasis b = splitting_basis(unit);
    CHECK(b[0] == one);
    CHECK(b[1] == unit.value());
    for (std::size_t s = 0; s < 8; ++s) {
      for (std::size_t t = 0; t < 8; ++t) {
        CHECK(dot(b[s], b[t]) == doctest::Approx(s == t ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        const Octonion e = oracle_mul(Octonion::basis(to_standard[s]), Octonion::basis(to_standard[t]));
        std::size_t idx = 0;
        for (std::size_t u = 0; u < 8; ++u) {
          if (e[u] != 0.0) idx = u;
        }
        CHECK(close(b[s] * b[t], e[idx] * b[from_standard[idx]], 1e-12));
      }
    }
    const Octonion x = random_octonion(rng);
    CHECK(close(b.from_coordinates(b.coordinates(x)), x, 1e-14));
  }
}

TEST_CASE("imaginary units and slice points") {
  CHECK(testing::kind_of([] { static_cast<void>(ImaginaryUnit(one + i)); }) == ErrorKind::NotImaginary);
  CHECK(testing::kind_of([] { static_cast<void>(ImaginaryUnit(Octonion())); }) == ErrorKind::NotImaginary);
  CHECK(ImaginaryUnit(2.0 * j).value() == j);
  const SlicePoint p = SlicePoint::decompose(parse_octonion("2-3lj"));
  CHECK(p.alpha == 2.0);
  CHECK(p.beta == 3.0);
  CHECK(p.unit.value() == -lj);
  const SlicePoint r = SlicePoint::decompose(Octonion(-4.0));
  CHECK(r.beta == 0.0);
  CHECK(r.unit.value() == i);
  CHECK(project_slice(parse_octonion("1+2i+3j"), i) == parse_octonion("1+2i"));
}

TEST_CASE("text format round trip") {
  CHECK(parse_octonion("1+2i-0.5lj") == Octonion({1, 2, 0, 0, 0, 0, -0.5, 0}));
  CHECK(parse_octonion("-lk") == -lk);
  CHECK(parse_octonion("i+i") == 2.0 * i);
  CHECK(format_octonion(parse_octonion("1+2i-0.5lj")) == "1+2i-0.5lj");
  testing::Rng rng(8);
  for (int n = 0; n < 200; ++n) {
    const Octonion x = random_octonion(rng, 10.0);
    CHECK(parse_octonion(format_octonion(x)) == x);
  }
  CHECK(testing::kind_of([] { parse_octonion(""); }) == ErrorKind::SyntaxError);
  try {
    parse_octonion("1+2q");
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::UnknownToken);
    REQUIRE(err.span().has_value());
    CHECK(err.span()->begin == 3);
  }
}
