#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oddclif/linalg.hpp"
#include "oddclif/scalar.hpp"

using namespace oddclif;

TEST_CASE("rational arithmetic is exact") {
  Scalar a(Rational(1, 3)), b(Rational(1, 6));
  CHECK(a + b == Scalar(Rational(1, 2)));
  CHECK(a * b == Scalar(Rational(1, 18)));
  CHECK((a - b) == b);
  CHECK(a / b == Scalar(2));
  CHECK((-a) + a == Scalar(0));
}

TEST_CASE("quadratic extension arithmetic") {
  // (1 + sqrt(2))(1 - sqrt(2)) = -1
  Scalar u(Rational(1), Rational(1), 2), v(Rational(1), Rational(-1), 2);
  CHECK(u * v == Scalar(-1));
  CHECK(u.inverse() * u == Scalar(1));
  Scalar r2(Rational(0), Rational(1), 2);
  CHECK(r2 * r2 == Scalar(2));
  // negative d behaves formally: sqrt(-1)^2 = -1
  Scalar i(Rational(0), Rational(1), -1);
  CHECK(i * i == Scalar(-1));
}

TEST_CASE("different extensions never mix") {
  Scalar u(Rational(0), Rational(1), 2), v(Rational(0), Rational(1), 3);
  CHECK_THROWS_AS(u + v, ScalarError);
  CHECK_THROWS_AS(u * v, ScalarError);
  CHECK(u + Scalar(Rational(1, 2)) == Scalar(Rational(1, 2), Rational(1), 2));
}

TEST_CASE("serialization roundtrip") {
  CHECK(Scalar(Rational(-3, 7)).str() == "-3/7");
  CHECK(Scalar::parse("-3/7") == Scalar(Rational(-3, 7)));
  Scalar s(Rational(1, 2), Rational(-2, 3), 5);
  CHECK(s.str() == "1/2-2/3*sqrt(5)");
  CHECK(Scalar::parse(s.str()) == s);
  CHECK(Scalar::parse("4") == Scalar(4));
  CHECK_THROWS_AS(Scalar::parse("x"), ScalarError);
  CHECK_THROWS_AS(Scalar::parse("1/0"), ScalarError);
}

TEST_CASE("square roots in the field") {
  CHECK(Scalar::sqrtInField(Scalar(Rational(9, 4)), 0) == Scalar(Rational(3, 2)));
  CHECK(Scalar::sqrtInField(Scalar(2), 2) == Scalar(Rational(0), Rational(1), 2));
  CHECK(Scalar::sqrtInField(Scalar(Rational(8)), 2) == Scalar(Rational(0), Rational(2), 2));
  CHECK(!Scalar::sqrtInField(Scalar(3), 2).has_value());
  CHECK(Scalar::sqrtInField(Scalar(-1), -1) == Scalar(Rational(0), Rational(1), -1));
  CHECK(!Scalar::sqrtInField(Scalar(-1), 0).has_value());
}

static Mat fromInts(std::initializer_list<std::initializer_list<int>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()),
        static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

TEST_CASE("exact determinant and inverse") {
  Mat a = fromInts({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  CHECK(exactDet(a) == Scalar(18));
  Mat inv = exactInverse(a);
  CHECK(isZeroMat(a * inv - identityMat(3)));
  Mat sing = fromInts({{1, 2}, {2, 4}});
  CHECK(exactDet(sing) == Scalar(0));
  CHECK_THROWS_AS(exactInverse(sing), LinalgError);
}

TEST_CASE("kernel and rank") {
  Mat a = fromInts({{1, 2, 3}, {2, 4, 6}});
  CHECK(exactRank(a) == 1);
  Mat k = kernelBasis(a);
  CHECK(k.cols() == 2);
  CHECK(isZeroMat(a * k));
}

TEST_CASE("elementary symmetric functions") {
  // eigenvalues 1, 2, 3: e = 1, 6, 11, 6
  Mat a = fromInts({{1, 0, 0}, {5, 2, 0}, {7, -1, 3}});
  auto e = elementarySymmetric(a);
  CHECK(e[0] == Scalar(1));
  CHECK(e[1] == Scalar(6));
  CHECK(e[2] == Scalar(11));
  CHECK(e[3] == Scalar(6));
}

TEST_CASE("rational roots") {
  // (x - 1/2)(x + 3)(x - 2) = x^3 + 1/2 x^2 - 13/2 x + 3
  std::vector<Rational> c{Rational(3), Rational(-13, 2), Rational(1, 2), Rational(1)};
  auto roots = rationalRoots(c);
  REQUIRE(roots.has_value());
  std::vector<Rational> expect{Rational(-3), Rational(1, 2), Rational(2)};
  CHECK(*roots == expect);
  // x^2 - 2 has no rational roots
  CHECK(!rationalRoots({Rational(-2), Rational(0), Rational(1)}).has_value());
}
