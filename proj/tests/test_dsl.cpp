#include "octoslice/dsl.hpp"
#include "octoslice/error.hpp"
#include "support.hpp"

using namespace octoslice;
using namespace octoslice::units;

namespace {

const SliceExpr X = SliceExpr::variable();

SliceExpr c(const Octonion& v) { return SliceExpr::constant(v); }

SliceExpr random_tree(testing::Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  switch (pick(rng)) {
    case 0:
      return X;
    case 1: {
      Octonion v;
      v[std::uniform_int_distribution<std::size_t>(0, 7)(rng)] = std::round(testing::uniform(rng, -50, 50)) / 8.0;
      return c(v);
    }
    case 2:
      return c(testing::random_octonion(rng));
    case 3:
      return SliceExpr::eta(testing::random_unit(rng));
    case 4:
      return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
    case 5:
      return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
    case 6:
      return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
    case 7:
      return conj(random_tree(rng, depth - 1));
    case 8:
      return SliceExpr::normal(random_tree(rng, depth - 1));
    default:
      return SliceExpr::pow(random_tree(rng, depth - 1), std::uniform_int_distribution<int>(0, 4)(rng));
  }
}

Error parse_error(std::string_view text) {
  try {
    parse_expr(text);
  } catch (const Error& err) {
    return err;
  }
  FAIL("expected an error for " << text);
  return Error(ErrorKind::InvalidArgument, "");
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(structurally_equal(parse_expr("x^2 + x*1i"), SliceExpr::pow(X, 2) + X * c(i)));
  CHECK(structurally_equal(parse_expr("2*x*eta(-1i)"), c(Octonion(2.0)) * X * SliceExpr::eta(ImaginaryUnit(-i))));
  CHECK(structurally_equal(parse_expr("x*eta(1i) - x^-1*eta(-1i)"),
                           X * SliceExpr::eta(ImaginaryUnit(i)) - SliceExpr::pow(X, -1) * SliceExpr::eta(ImaginaryUnit(-i))));
  CHECK(structurally_equal(parse_expr("[1+2j]*x"), c(parse_octonion("1+2j")) * X));
  CHECK(structurally_equal(parse_expr("N(x - 1i)"), SliceExpr::normal(X - c(i))));
  CHECK(structurally_equal(parse_expr("conj(x^3)"), SliceExpr::conjugate(SliceExpr::pow(X, 3))));
  CHECK(structurally_equal(parse_expr("x^+2"), SliceExpr::pow(X, 2)));
  CHECK(parse_expr("d(x^3)").kind() == SliceExpr::Kind::CDeriv);
}

TEST_CASE("parsed expressions evaluate as written") {
  const SliceExpr f = parse_expr("x^2 + x*1j + 1l");
  testing::Rng rng(61);
  for (int n = 0; n < 20; ++n) {
    const Octonion x = testing::random_nonreal(rng);
    CHECK(testing::close(eval(f, x), x * x + x * j + l, 1e-13));
  }
}

TEST_CASE("render round trip") {
  testing::Rng rng(62);
  for (int n = 0; n < 500; ++n) {
    const SliceExpr e = random_tree(rng, 4);
    const std::string text = render_expr(e);
    CHECK_MESSAGE(structurally_equal(parse_expr(text), e), text);
    CHECK(render_expr(parse_expr(text)) == text);
  }
}

TEST_CASE("syntax errors carry spans") {
  const Error unknown = parse_error("x + y");
  CHECK(unknown.kind() == ErrorKind::UnknownToken);
  REQUIRE(unknown.span().has_value());
  CHECK(unknown.span()->begin == 4);

  CHECK(parse_error("x^").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("(x").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("x x").kind() == ErrorKind::SyntaxError);
  CHECK(parse_error("eta(1)").kind() == ErrorKind::NotImaginary);
  const Error trailing = parse_error("x^2 )");
  REQUIRE(trailing.span().has_value());
  CHECK(trailing.span()->begin == 4);
}

TEST_CASE("caret line") {
  CHECK(caret_line("x + y", 4, 5) == "x + y\n    ^");
  CHECK(caret_line("abc", 1, 1) == "abc\n ^");
}
