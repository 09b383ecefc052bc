#pragma once

#include <map>

#include "oddclif/superlin.hpp"

namespace oddclif {

struct LfunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial in u = q^{-s}.
struct LaurentPoly {
  std::map<int, Scalar> coeffs;  // exponent -> nonzero coefficient

  void set(int exp, Scalar c) {
    if (c.isZero())
      coeffs.erase(exp);
    else
      coeffs[exp] = std::move(c);
  }
  Scalar at(int exp) const {
    auto it = coeffs.find(exp);
    return it == coeffs.end() ? Scalar(0) : it->second;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  LaurentPoly operator*(const LaurentPoly& o) const;
  /// Sorted (exponent, scalar-string) pairs.
  std::string str() const;
};

/// L(V, F, s) as a numerator/denominator pair in u; purely odd V gives
/// denominator 1 and numerator sum_k (-1)^k e_k(F) u^k.
struct LFactor {
  LaurentPoly num;
  LaurentPoly den;
};

LFactor lFunction(const SuperMap& f);

/// superdet(F)^{-1}.
Scalar rootNumber(const SuperMap& f);

/// (-1)^{r(r-1)/2 + n}.
Scalar epsilonSign(int n, int r);

/// D_r = sum_{k=0}^{2n} (-1)^k e_k(F) (n-k)^r, with 0^0 = 1: the exact value
/// of the r-th central s-derivative of q^{ns} L(M, F, s) with the (ln q)^r
/// factor stripped. F must be an even endomorphism of a purely odd M.
Scalar centralDerivative(const SuperMap& f, int r);

/// Independent route to D_r: represents q^{ns}L as a formal sum of terms
/// c_k q^{(n-k)s}, differentiates term-wise (each derivative multiplies by
/// (n-k) and raises the formal ln(q) power), evaluates at s = 0 and strips
/// (ln q)^r. The value of q is recorded for the report but cancels exactly.
Scalar centralDerivativeSymbolicOracle(const SuperMap& f, int r, const Rational& q);

}  // namespace oddclif
