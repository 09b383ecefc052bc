#include "oddclif/lfun.hpp"

namespace oddclif {

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [ea, ca] : coeffs)
    for (const auto& [eb, cb] : o.coeffs) {
      auto it = out.coeffs.find(ea + eb);
      if (it == out.coeffs.end())
        out.coeffs.emplace(ea + eb, ca * cb);
      else {
        it->second += ca * cb;
        if (it->second.isZero()) out.coeffs.erase(it);
      }
    }
  return out;
}

std::string LaurentPoly::str() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [e, c] : coeffs) {
    if (!first) s += ", ";
    s += "(" + std::to_string(e) + ", " + c.str() + ")";
    first = false;
  }
  return s + "]";
}

namespace {

LaurentPoly charFactor(const Mat& block) {
  // det(1 - u F) = sum_k (-1)^k e_k(F) u^k
  LaurentPoly p;
  auto e = elementarySymmetric(block);
  for (size_t k = 0; k < e.size(); ++k)
    p.set(static_cast<int>(k), (k % 2 == 0) ? e[k] : -e[k]);
  return p;
}

}  // namespace

LFactor lFunction(const SuperMap& f) {
  if (!f.isSquare() || f.parity != 0) throw LfunError("lFunction: need even square map");
  const int p = f.source.evenDim(), q = f.source.oddDim();
  LFactor out;
  out.num = charFactor(f.mat.bottomRightCorner(q, q));
  out.den = charFactor(f.mat.topLeftCorner(p, p));
  return out;
}

Scalar rootNumber(const SuperMap& f) { return superdet(f).inverse(); }

Scalar epsilonSign(int n, int r) {
  return Scalar((r * (r - 1) / 2 + n) % 2 == 0 ? 1 : -1);
}

namespace {

Scalar intPow(int base, int exp) {
  if (exp == 0) return Scalar(1);  // includes 0^0 = 1
  Rational v(1);
  for (int i = 0; i < exp; ++i) v *= base;
  return Scalar(v);
}

std::vector<Scalar> oddElementary(const SuperMap& f) {
  if (!f.isSquare() || f.parity != 0 || f.source.evenDim() != 0)
    throw LfunError("centralDerivative: F must be an even endomorphism of a purely odd space");
  if (f.source.oddDim() % 2 != 0) throw LfunError("centralDerivative: odd dimension must be 2n");
  return elementarySymmetric(f.mat);
}

}  // namespace

Scalar centralDerivative(const SuperMap& f, int r) {
  if (r < 0) throw LfunError("centralDerivative: negative order");
  auto e = oddElementary(f);
  const int n = f.source.oddDim() / 2;
  Scalar d(0);
  for (int k = 0; k <= 2 * n; ++k) {
    Scalar term = e[k] * intPow(n - k, r);
    d += (k % 2 == 0) ? term : -term;
  }
  return d;
}

Scalar centralDerivativeSymbolicOracle(const SuperMap& f, int r, const Rational& q) {
  if (r < 0) throw LfunError("centralDerivativeSymbolicOracle: negative order");
  if (q <= 1) throw LfunError("centralDerivativeSymbolicOracle: q must exceed 1");
  auto e = oddElementary(f);
  const int n = f.source.oddDim() / 2;
  // term list for q^{ns} L: (coefficient, s-exponent multiplier m, ln(q) power)
  struct Term {
    Scalar c;
    int m;
    int lnPow;
  };
  std::vector<Term> terms;
  for (int k = 0; k <= 2 * n; ++k) {
    Scalar c = (k % 2 == 0) ? e[k] : -e[k];
    if (!c.isZero()) terms.push_back({c, n - k, 0});
  }
  for (int step = 0; step < r; ++step)
    for (auto& t : terms) {
      t.c *= Scalar(t.m);
      t.lnPow += 1;
    }
  Scalar out(0);
  for (const auto& t : terms) {
    if (t.c.isZero()) continue;
    if (t.lnPow != r)
      throw LfunError("centralDerivativeSymbolicOracle: ln(q) bookkeeping broken");
    // evaluate q^{m s} at s = 0: contributes 1 for any q
    out += t.c;
  }
  return out;
}

}  // namespace oddclif
