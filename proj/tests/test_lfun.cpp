#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oddclif/lfun.hpp"
#include "oddclif/scenario.hpp"

using namespace oddclif;

TEST_CASE("L-factor of an even/odd map and block multiplicativity") {
  SuperSpace v{{"a"}, {"b"}};
  Mat m = zeroMat(2, 2);
  m(0, 0) = Scalar(3);
  m(1, 1) = Scalar(5);
  SuperMap f(v, v, 0, m);
  LFactor lf = lFunction(f);
  // numerator from the odd block: 1 - 5u; denominator from the even: 1 - 3u
  CHECK(lf.num.at(0) == Scalar(1));
  CHECK(lf.num.at(1) == Scalar(-5));
  CHECK(lf.den.at(1) == Scalar(-3));

  // purely odd: denominator 1
  SuperSpace w = SuperSpace::purelyOdd({"m1", "m2"});
  Mat m2 = zeroMat(2, 2);
  m2(0, 0) = Scalar(2);
  m2(1, 1) = Scalar(7);
  SuperMap g(w, w, 0, m2);
  LFactor lg = lFunction(g);
  CHECK(lg.den.at(0) == Scalar(1));
  CHECK(lg.den.coeffs.size() == 1);
  // block sum multiplies numerators
  SuperSpace w2 = SuperSpace::purelyOdd({"m1", "m2", "m3", "m4"});
  Mat big = zeroMat(4, 4);
  big.topLeftCorner(2, 2) = m2;
  big(2, 2) = Scalar(-1);
  big(3, 3) = Scalar(4);
  SuperMap h(w2, w2, 0, big);
  Mat other = zeroMat(2, 2);
  other(0, 0) = Scalar(-1);
  other(1, 1) = Scalar(4);
  SuperMap g2(w, w, 0, other);
  CHECK(lFunction(h).num == lg.num * lFunction(g2).num);
}

TEST_CASE("root number is the superdeterminant inverse") {
  SuperSpace w = SuperSpace::purelyOdd({"m1", "m2"});
  Mat m = zeroMat(2, 2);
  m(0, 0) = Scalar(3);
  m(1, 1) = Scalar(Rational(1, 3));
  SuperMap f(w, w, 0, m);
  CHECK(rootNumber(f) == superdet(f).inverse());
  CHECK(rootNumber(f) == Scalar(1));
}

TEST_CASE("epsilon sign values") {
  CHECK(epsilonSign(1, 0) == Scalar(-1));
  CHECK(epsilonSign(1, 2) == Scalar(1));
  CHECK(epsilonSign(2, 4) == Scalar(1));
}

TEST_CASE("central derivative closed form") {
  // n = 1, F = diag(a, 1/a): D_0 = 2 - a - 1/a, D_2 = 2 (a-independent part
  // checked at a = 4)
  SuperSpace w = SuperSpace::purelyOdd({"m1", "m2"});
  Mat m = zeroMat(2, 2);
  m(0, 0) = Scalar(4);
  m(1, 1) = Scalar(Rational(1, 4));
  SuperMap f(w, w, 0, m);
  CHECK(centralDerivative(f, 0) == Scalar(2) - Scalar(4) - Scalar(Rational(1, 4)));
  CHECK(centralDerivative(f, 2) == Scalar(2));
  CHECK_THROWS_AS(centralDerivative(f, -1), LfunError);
}

TEST_CASE("palindromic coefficients for omega-orthogonal F") {
  std::mt19937_64 rng(43);
  for (int n : {1, 2, 3}) {
    CliffordContext ctx(n);
    for (int trial = 0; trial < 10; ++trial) {
      Mat fl = randomInvertibleIntMatrix(n, rng(), 4);
      SuperMap f = orthogonalFromLBlock(ctx, fl);
      auto e = elementarySymmetric(f.mat);
      for (size_t k = 0; k < e.size(); ++k) CHECK(e[k] == e[e.size() - 1 - k]);
    }
  }
}

TEST_CASE("unipotent F vanishes to order exactly 2n") {
  for (int n : {1, 2}) {
    SuperSpace w = SuperSpace::purelyOdd(std::vector<std::string>(2 * n, "m"));
    SuperMap f(w, w, 0, identityMat(2 * n));
    for (int r = 0; r < 2 * n; ++r) CHECK(centralDerivative(f, r) == Scalar(0));
    CHECK(centralDerivative(f, 2 * n) != Scalar(0));
  }
}

TEST_CASE("symbolic oracle agrees with the closed form") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    CliffordContext ctx(n);
    Mat fl = randomInvertibleIntMatrix(n, rng(), 5);
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    for (int r = 0; r <= 5; ++r)
      for (int q : {2, 3})
        CHECK(centralDerivative(f, r) == centralDerivativeSymbolicOracle(f, r, Rational(q)));
  }
  SuperSpace w = SuperSpace::purelyOdd({"m1", "m2"});
  SuperMap f(w, w, 0, identityMat(2));
  CHECK_THROWS_AS(centralDerivativeSymbolicOracle(f, 1, Rational(1)), LfunError);
}
