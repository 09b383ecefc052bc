#include "oddclif/flagcoh.hpp"

#include <sstream>

namespace oddclif {
namespace flagcoh {

namespace {

void addTerm(Poly& p, const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.terms.find(m);
  if (it == p.terms.end()) {
    p.terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) p.terms.erase(it);
  }
}

Mono monoMul(const Mono& a, const Mono& b) {
  Mono out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<unsigned char>(out[i] + b[i]);
  return out;
}

}  // namespace

FlagRing::FlagRing(int n) : n_(n) {
  if (n < 2) throw FlagcohError("FlagRing: need n >= 2");
  // Solve the module relations cbar_n = 0, dbar_{n-1} = 0, ebar_{n-1} = 0 for
  // the top power of x, y, z respectively.
  auto solveTop = [this](const Poly& bar, int v, int power) {
    Mono top(vars(), 0);
    top[static_cast<size_t>(v)] = static_cast<unsigned char>(power);
    auto it = bar.terms.find(top);
    if (it == bar.terms.end()) throw FlagcohError("FlagRing: relation misses its top power");
    Rational lead = it->second;
    Poly rest;
    for (const auto& [m, c] : bar.terms)
      if (m != top) addTerm(rest, m, -c / lead);
    return rest;
  };
  xRepl_ = solveTop(cbar(n_), xVar(), n_);
  yRepl_ = solveTop(dbar(n_ - 1), yVar(), n_ - 1);
  zRepl_ = solveTop(ebar(n_ - 1), zVar(), n_ - 1);
}

int FlagRing::cVar(int i) const {
  if (i < 1 || i > n_) throw FlagcohError("cVar: index out of range");
  return 3 + i;
}

int FlagRing::dVar(int i) const {
  if (i < 1 || i > n_ - 1) throw FlagcohError("dVar: index out of range");
  return 3 + n_ + i;
}

int FlagRing::eVar(int i) const {
  if (i < 1 || i > n_ - 1) throw FlagcohError("eVar: index out of range");
  return 3 + n_ + (n_ - 1) + i;
}

Poly FlagRing::constant(const Rational& c) const {
  Poly p;
  addTerm(p, Mono(vars(), 0), c);
  return p;
}

Poly FlagRing::var(int v, int power) const {
  if (v < 0 || v >= vars() || power < 0) throw FlagcohError("var: bad arguments");
  Mono m(vars(), 0);
  m[static_cast<size_t>(v)] = static_cast<unsigned char>(power);
  Poly p;
  addTerm(p, m, 1);
  return p;
}

Poly FlagRing::add(const Poly& a, const Poly& b) const {
  Poly out = a;
  for (const auto& [m, c] : b.terms) addTerm(out, m, c);
  return out;
}

Poly FlagRing::sub(const Poly& a, const Poly& b) const {
  Poly out = a;
  for (const auto& [m, c] : b.terms) addTerm(out, m, -c);
  return out;
}

Poly FlagRing::mul(const Poly& a, const Poly& b) const {
  Poly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) addTerm(out, monoMul(ma, mb), ca * cb);
  return out;
}

Poly FlagRing::scale(const Poly& a, const Rational& c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, cm] : a.terms) out.terms.emplace(m, cm * c);
  return out;
}

Poly FlagRing::substitute(const Poly& p, const std::map<int, Poly>& repl) const {
  Poly out;
  for (const auto& [m, c] : p.terms) {
    Mono base = m;
    Poly acc = constant(c);
    for (const auto& [v, r] : repl) {
      int e = base[static_cast<size_t>(v)];
      if (e == 0) continue;
      base[static_cast<size_t>(v)] = 0;
      for (int k = 0; k < e; ++k) acc = mul(acc, r);
    }
    Poly basePoly;
    addTerm(basePoly, base, 1);
    out = add(out, mul(acc, basePoly));
  }
  return out;
}

Poly FlagRing::cbar(int i) const {
  // cbar_i = sum_{j=0}^{i} (-x)^j c_{i-j}, with c_0 = 1 and c_k = 0 otherwise.
  Poly out;
  for (int j = 0; j <= i; ++j) {
    const int k = i - j;
    if (k > n_) continue;
    Mono m(vars(), 0);
    m[static_cast<size_t>(xVar())] = static_cast<unsigned char>(j);
    if (k > 0) m[static_cast<size_t>(cVar(k))] = 1;
    addTerm(out, m, (j % 2 == 0) ? Rational(1) : Rational(-1));
  }
  return out;
}

Poly FlagRing::dbar(int i) const {
  Poly out;
  for (int j = 0; j <= i; ++j) {
    const int k = i - j;
    if (k > n_ - 1) continue;
    Mono m(vars(), 0);
    m[static_cast<size_t>(yVar())] = static_cast<unsigned char>(j);
    if (k > 0) m[static_cast<size_t>(dVar(k))] = 1;
    addTerm(out, m, (j % 2 == 0) ? Rational(1) : Rational(-1));
  }
  return out;
}

Poly FlagRing::ebar(int i) const {
  Poly out;
  for (int j = 0; j <= i; ++j) {
    const int k = i - j;
    if (k > n_ - 1) continue;
    Mono m(vars(), 0);
    m[static_cast<size_t>(zVar())] = static_cast<unsigned char>(j);
    if (k > 0) m[static_cast<size_t>(eVar(k))] = 1;
    addTerm(out, m, (j % 2 == 0) ? Rational(1) : Rational(-1));
  }
  return out;
}

Poly FlagRing::reduceWith(const Poly& p, int v, int power, const Poly& repl) const {
  Poly cur = p;
  while (true) {
    bool changed = false;
    Poly next;
    for (const auto& [m, c] : cur.terms) {
      if (m[static_cast<size_t>(v)] >= power) {
        changed = true;
        Mono rest = m;
        rest[static_cast<size_t>(v)] = static_cast<unsigned char>(rest[static_cast<size_t>(v)] - power);
        for (const auto& [rm, rc] : repl.terms) addTerm(next, monoMul(rest, rm), c * rc);
      } else {
        addTerm(next, m, c);
      }
    }
    if (!changed) return cur;
    cur = next;
  }
}

Poly FlagRing::reduceToBasis(const Poly& p) const {
  // The x and y rewrites touch disjoint variable sets, so one pass of each
  // suffices.
  return reduceWith(reduceWith(p, xVar(), n_, xRepl_), yVar(), n_ - 1, yRepl_);
}

Poly FlagRing::reduceZ(const Poly& p) const {
  return reduceWith(p, zVar(), n_ - 1, zRepl_);
}

Poly FlagRing::twistG(const Poly& f, int sign) const {
  std::map<int, Poly> repl;
  const Poly h = var(hVar());
  for (int i = 1; i <= n_; ++i)
    repl[cVar(i)] = add(var(cVar(i)), scale(mul(h, cbar(i - 1)), sign));
  for (int i = 1; i <= n_ - 1; ++i)
    repl[dVar(i)] = add(var(dVar(i)), scale(mul(h, dbar(i - 1)), sign));
  return substitute(f, repl);
}

Poly FlagRing::twistH(const Poly& f, int sign) const {
  std::map<int, Poly> repl;
  const Poly h = var(hVar());
  for (int i = 1; i <= n_ - 1; ++i)
    repl[eVar(i)] = add(var(eVar(i)), scale(mul(h, ebar(i - 1)), sign));
  return substitute(f, repl);
}

Poly FlagRing::leftAction(const Poly& f, const Poly& m, int sign) const {
  return reduceToBasis(mul(twistG(f, sign), m));
}

Poly FlagRing::restrictToH(const Poly& p) const {
  std::map<int, Poly> repl;
  repl[xVar()] = var(zVar());
  repl[yVar()] = var(zVar());
  for (int i = 1; i <= n_; ++i) repl[cVar(i)] = (i <= n_ - 1) ? var(eVar(i)) : zero();
  for (int i = 1; i <= n_ - 1; ++i) repl[dVar(i)] = var(eVar(i));
  return reduceZ(substitute(p, repl));
}

std::vector<Poly> FlagRing::untwistZ(Poly p, int sign) const {
  p = reduceZ(p);
  std::vector<Poly> qs(static_cast<size_t>(n_ - 1));
  Poly hPow = constant(1);
  const Poly h = var(hVar());
  while (!p.isZero()) {
    Poly p0;
    for (const auto& [m, c] : p.terms)
      if (m[static_cast<size_t>(hVar())] == 0) addTerm(p0, m, c);
    if (p0.isZero()) {
      // Every term is divisible by hbar: peel one power and keep recording
      // against the accumulated multiplier.
      Poly peeled;
      for (const auto& [m, c] : p.terms) {
        Mono mm = m;
        mm[static_cast<size_t>(hVar())] = static_cast<unsigned char>(mm[static_cast<size_t>(hVar())] - 1);
        peeled.terms.emplace(mm, c);
      }
      p = peeled;
      hPow = mul(hPow, h);
      continue;
    }
    std::vector<Poly> addQ(static_cast<size_t>(n_ - 1));
    for (const auto& [m, c] : p0.terms) {
      const int i = m[static_cast<size_t>(zVar())];
      if (i >= n_ - 1) throw FlagcohError("untwistZ: input not reduced");
      Mono mm = m;
      mm[static_cast<size_t>(zVar())] = 0;
      addTerm(addQ[static_cast<size_t>(i)], mm, c);
    }
    Poly subtract;
    for (int i = 0; i < n_ - 1; ++i) {
      const Poly& a = addQ[static_cast<size_t>(i)];
      if (a.isZero()) continue;
      qs[static_cast<size_t>(i)] = add(qs[static_cast<size_t>(i)], mul(hPow, a));
      subtract = add(subtract, reduceZ(mul(twistH(a, sign), var(zVar(), i))));
    }
    p = sub(p, subtract);
  }
  return qs;
}

std::map<std::pair<int, int>, Poly> FlagRing::untwistXY(Poly p, int sign) const {
  p = reduceToBasis(p);
  std::map<std::pair<int, int>, Poly> qs;
  Poly hPow = constant(1);
  const Poly h = var(hVar());
  while (!p.isZero()) {
    Poly p0;
    for (const auto& [m, c] : p.terms)
      if (m[static_cast<size_t>(hVar())] == 0) addTerm(p0, m, c);
    if (p0.isZero()) {
      Poly peeled;
      for (const auto& [m, c] : p.terms) {
        Mono mm = m;
        mm[static_cast<size_t>(hVar())] = static_cast<unsigned char>(mm[static_cast<size_t>(hVar())] - 1);
        peeled.terms.emplace(mm, c);
      }
      p = peeled;
      hPow = mul(hPow, h);
      continue;
    }
    std::map<std::pair<int, int>, Poly> addQ;
    for (const auto& [m, c] : p0.terms) {
      const int i = m[static_cast<size_t>(xVar())];
      const int j = m[static_cast<size_t>(yVar())];
      if (i >= n_ || j >= n_ - 1) throw FlagcohError("untwistXY: input not reduced");
      Mono mm = m;
      mm[static_cast<size_t>(xVar())] = 0;
      mm[static_cast<size_t>(yVar())] = 0;
      addTerm(addQ[{i, j}], mm, c);
    }
    Poly subtract;
    for (const auto& [ij, a] : addQ) {
      if (a.isZero()) continue;
      auto& slot = qs[ij];
      slot = add(slot, mul(hPow, a));
      Poly basisMono = mul(var(xVar(), ij.first), var(yVar(), ij.second));
      subtract = add(subtract, mul(twistG(a, sign), basisMono));
    }
    p = sub(p, reduceToBasis(subtract));
  }
  return qs;
}

Poly FlagRing::cVcoh(const Poly& m, const Poly& hPart) const {
  Poly p = reduceZ(mul(restrictToH(reduceToBasis(m)), hPart));
  auto q = untwistZ(p, -1);
  return scale(q[static_cast<size_t>(n_ - 2)], (n_ % 2 == 0) ? Rational(1) : Rational(-1));
}

Poly FlagRing::cWcoh(const Poly& m, const Poly& hPart) const {
  Poly p = reduceZ(mul(restrictToH(reduceToBasis(m)), hPart));
  auto q = untwistZ(p, +1);
  return q[static_cast<size_t>(n_ - 2)];
}

Poly FlagRing::bGeoCoh(const Poly& m1, const Poly& m2) const {
  std::map<int, Poly> shift;
  shift[xVar()] = sub(var(xVar()), var(hVar()));
  shift[yVar()] = sub(var(yVar()), var(hVar()));
  Poly shifted = substitute(m2, shift);
  Poly p = reduceToBasis(mul(reduceToBasis(m1), shifted));
  auto q = untwistXY(p, -1);
  auto it = q.find({n_ - 1, n_ - 2});
  return it == q.end() ? zero() : scale(it->second, Rational(-1));
}

std::optional<int> FlagRing::gradedDegree(const Poly& p) const {
  std::optional<int> deg;
  for (const auto& [m, c] : p.terms) {
    (void)c;
    int d = m[0] + m[1] + m[2] + m[3];
    for (int i = 1; i <= n_; ++i) d += i * m[static_cast<size_t>(cVar(i))];
    for (int i = 1; i <= n_ - 1; ++i) d += i * m[static_cast<size_t>(dVar(i))];
    for (int i = 1; i <= n_ - 1; ++i) d += i * m[static_cast<size_t>(eVar(i))];
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

std::string FlagRing::str(const Poly& p) const {
  if (p.isZero()) return "0";
  std::vector<std::string> names = {"x", "y", "z", "hbar"};
  for (int i = 1; i <= n_; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 1; i <= n_ - 1; ++i) names.push_back("d" + std::to_string(i));
  for (int i = 1; i <= n_ - 1; ++i) names.push_back("e" + std::to_string(i));
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string vars;
    for (size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names[v];
      if (m[v] > 1) vars += "^" + std::to_string(static_cast<int>(m[v]));
    }
    if (vars.empty()) {
      os << mag;
    } else if (mag == 1) {
      os << vars;
    } else {
      os << mag << "*" << vars;
    }
  }
  return os.str();
}

TensorVW swapVW(const TensorVW& t) {
  TensorVW out;
  for (const auto& [k, p] : t.terms) out.terms[{k[2], k[3], k[0], k[1]}] = p;
  return out;
}

}  // namespace flagcoh

KappaReport computeKappa(int n, bool fullBasisCheck) {
  using flagcoh::FlagRing;
  using flagcoh::Poly;
  FlagRing R(n);
  KappaReport rep;
  rep.n = n;

  const Poly one = R.constant(1);
  const Poly wV = R.var(R.xVar(), n - 1);
  const Poly wW = R.var(R.yVar(), n - 2);

  auto commutator = [&](const Poly& m1, const Poly& m2) {
    Poly g1 = R.cVcoh(m1, R.cWcoh(m2, one));
    Poly g2 = R.cWcoh(m2, R.cVcoh(m1, one));
    return std::make_tuple(g1, g2, R.sub(g1, g2));
  };

  auto [g1, g2, comm] = commutator(wV, wW);
  Poly g3 = R.bGeoCoh(wV, wW);
  rep.witnessVV = R.str(g1);
  rep.witnessWV = R.str(g2);
  rep.witnessGeo = R.str(g3);

  // Solve comm = kappa * hbar * restrict(g3) for a constant kappa.
  auto solveRatio = [&](const Poly& num, const Poly& den) -> std::optional<Rational> {
    if (den.isZero()) return num.isZero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
    if (num.isZero()) return Rational(0);
    const auto& [dm, dc] = *den.terms.begin();
    auto it = num.terms.find(dm);
    if (it == num.terms.end()) return std::nullopt;
    Rational k = it->second / dc;
    Poly check = R.sub(num, R.scale(den, k));
    if (!check.isZero()) return std::nullopt;
    return k;
  };

  Poly denom = R.reduceZ(R.mul(R.var(R.hVar()), R.restrictToH(g3)));
  auto k = solveRatio(comm, denom);
  if (!k) {
    rep.pass = false;
    return rep;
  }
  rep.kappa = Scalar(*k);
  rep.pass = (*k == ((n % 2 == 1) ? Rational(1) : Rational(-1)));

  if (fullBasisCheck) {
    for (int i = 0; i < n && rep.pass; ++i)
      for (int s = 0; s < n - 1; ++s)
        for (int j = 0; j < n; ++j)
          for (int t = 0; t < n - 1; ++t) {
            Poly m1 = R.mul(R.var(R.xVar(), i), R.var(R.yVar(), s));
            Poly m2 = R.mul(R.var(R.xVar(), j), R.var(R.yVar(), t));
            auto [h1, h2, c] = commutator(m1, m2);
            (void)h1;
            (void)h2;
            Poly rhs = R.scale(
                R.reduceZ(R.mul(R.var(R.hVar()), R.restrictToH(R.bGeoCoh(m1, m2)))), *k);
            ++rep.basisChecked;
            if (!(R.sub(c, rhs).isZero())) ++rep.residualNonzero;
          }
  }
  return rep;
}

}  // namespace oddclif
