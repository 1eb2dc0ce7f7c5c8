#include "octoslice/error.hpp"
#include "octoslice/linalg.hpp"
#include "support.hpp"

using namespace octoslice;
using namespace octoslice::units;

namespace {

Eigen::MatrixXd block_diag(const std::vector<double>& signs) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * signs.size(), 2 * signs.size());
  for (std::size_t b = 0; b < signs.size(); ++b) {
    m(2 * b, 2 * b + 1) = -signs[b];
    m(2 * b + 1, 2 * b) = signs[b];
  }
  return m;
}

Eigen::MatrixXd random_skew(testing::Rng& rng, int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      m(r, c) = testing::uniform(rng, -1.0, 1.0);
      m(c, r) = -m(r, c);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("multiplication matrices in the standard basis") {
  CHECK((matrix_of_left_mul(i) - Matrix8(block_diag({1, 1, -1, -1}))).norm() == 0.0);
  CHECK((matrix_of_right_mul(i) - Matrix8(block_diag({1, -1, 1, 1}))).norm() == 0.0);
  testing::Rng rng(11);
  const SplittingBasis b = splitting_basis(testing::random_unit(rng));
  CHECK((matrix_of_left_mul(one, b) - Matrix8::Identity()).norm() <= 1e-14);
  CHECK((matrix_of_right_mul(one, b) - Matrix8::Identity()).norm() <= 1e-14);
  for (int n = 0; n < 100; ++n) {
    const Octonion p = testing::random_octonion(rng), x = testing::random_octonion(rng);
    CHECK(testing::close(from_vector(matrix_of_left_mul(p) * to_vector(x)), p * x, 1e-14));
    CHECK(testing::close(from_vector(matrix_of_right_mul(p) * to_vector(x)), x * p, 1e-14));
    CHECK(matrix_of_left_mul(p).determinant() == doctest::Approx(std::pow(p.norm(), 4)).epsilon(1e-9));
    CHECK(matrix_of_right_mul(p).determinant() == doctest::Approx(std::pow(p.norm(), 4)).epsilon(1e-9));
    const Matrix8 in_basis = matrix_of_left_mul(p, b);
    const Matrix8 change = basis_matrix(b);
    CHECK((change * in_basis * change.transpose() - matrix_of_left_mul(p)).norm() <= 1e-13);
  }
}

TEST_CASE("Pfaffian") {
  CHECK(pfaffian(block_diag({1})) == -1.0);
  Eigen::MatrixXd two(2, 2);
  two << 0, 5, -5, 0;
  CHECK(pfaffian(two) == 5.0);
  CHECK(pfaffian(block_diag({1, 1, -1, -1})) == 1.0);
  CHECK(pfaffian(block_diag({1, 1, 1, 1})) == 1.0);
  CHECK(pfaffian(block_diag({1, 1, 1})) == -1.0);
  testing::Rng rng(12);
  for (int n : {2, 4, 6, 8}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::MatrixXd m = random_skew(rng, n);
      const double pf = pfaffian(m);
      CHECK(pf * pf == doctest::Approx(m.determinant()).epsilon(1e-9).scale(1.0));
    }
  }
  Eigen::MatrixXd not_skew = Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(pfaffian(not_skew), Error);
  CHECK_THROWS_AS(pfaffian(Eigen::MatrixXd::Zero(3, 3)), Error);
}

TEST_CASE("orientation of left and right multiplications") {
  testing::Rng rng(13);
  for (int n = 0; n < 100; ++n) {
    const ImaginaryUnit unit = testing::random_unit(rng);
    const Eigen::MatrixXd left = matrix_of_left_mul(unit.value());
    const Eigen::MatrixXd right = matrix_of_right_mul(unit.value());
    CHECK(is_orthogonal_complex_structure(left));
    CHECK(is_orthogonal_complex_structure(right));
    CHECK(induces_standard_orientation(left));
    CHECK_FALSE(induces_standard_orientation(right));
    CHECK(same_orientation(left, left));
    CHECK(basis_matrix(splitting_basis(unit)).determinant() > 0.0);
  }
  CHECK(same_orientation(reference_structure(4), block_diag({1, 1})));
  CHECK_FALSE(same_orientation(reference_structure(4), block_diag({1, -1})));
  try {
    same_orientation(Eigen::MatrixXd::Identity(8, 8), matrix_of_left_mul(i));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotAComplexStructure);
  }
}

TEST_CASE("structure distance") {
  const Eigen::MatrixXd a = matrix_of_left_mul(i);
  CHECK(structure_distance(a, a) == 0.0);
  CHECK(structure_distance(a, -a) == doctest::Approx(2.0));
}
