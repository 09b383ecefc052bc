#pragma once

#include <array>
#include <map>

#include "oddclif/scalar.hpp"

namespace oddclif {

struct FlagcohError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace flagcoh {

/// Exponent vector over the generators x, y, z, hbar, c_1..c_n, d_1..d_{n-1},
/// e_1..e_{n-1} (in that order).
using Mono = std::vector<unsigned char>;

struct Poly {
  std::map<Mono, Rational> terms;

  bool isZero() const { return terms.empty(); }
  friend bool operator==(const Poly&, const Poly&) = default;
};

/// The polynomial model for the GL_n x GL_{n-1} pair: one bimodule presented
/// as k[c, d, hbar][x, y] modulo the degree-n relation in x and the degree-
/// (n-1) relation in y, restriction to the one-variable z-ring k[e, hbar][z],
/// twisted coefficient extractions, and the geometric pairing.
class FlagRing {
 public:
  explicit FlagRing(int n);

  int n() const { return n_; }
  int vars() const { return 3 * n_ + 2; }
  int xVar() const { return 0; }
  int yVar() const { return 1; }
  int zVar() const { return 2; }
  int hVar() const { return 3; }
  int cVar(int i) const;  // 1 <= i <= n
  int dVar(int i) const;  // 1 <= i <= n-1
  int eVar(int i) const;  // 1 <= i <= n-1

  Poly zero() const { return Poly{}; }
  Poly constant(const Rational& c) const;
  Poly var(int v, int power = 1) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Rational& c) const;
  /// Simultaneous substitution of variables.
  Poly substitute(const Poly& p, const std::map<int, Poly>& repl) const;

  /// Barred generators: cbar_i = sum_j (-x)^j c_{i-j} and the d/y, e/z
  /// analogues (cbar_0 = 1).
  Poly cbar(int i) const;
  Poly dbar(int i) const;
  Poly ebar(int i) const;

  /// Normal form modulo cbar_n = 0 (x-degree < n) and dbar_{n-1} = 0
  /// (y-degree < n-1).
  Poly reduceToBasis(const Poly& p) const;
  /// Normal form in the z-ring modulo ebar_{n-1} = 0.
  Poly reduceZ(const Poly& p) const;

  /// Left action of a coefficient-ring element through the twisted embedding
  /// c_i -> c_i + sign*hbar*cbar_{i-1}, d_i -> d_i + sign*hbar*dbar_{i-1}
  /// (sign = -1 for the lambda twist, +1 for the opposite twist).
  Poly leftAction(const Poly& f, const Poly& m, int sign) const;
  /// The twisted embedding itself (on coefficient polynomials).
  Poly twistG(const Poly& f, int sign) const;
  Poly twistH(const Poly& f, int sign) const;

  /// x, y -> z; c_i -> e_i (c_n -> 0); d_i -> e_i; then reduceZ.
  Poly restrictToH(const Poly& p) const;

  /// Writes P = sum_i twistH(q_i, sign) * z^i over the basis z^0..z^{n-2};
  /// returns the q_i.
  std::vector<Poly> untwistZ(Poly p, int sign) const;
  /// Same over the x^i y^j basis with the c/d twists.
  std::map<std::pair<int, int>, Poly> untwistXY(Poly p, int sign) const;

  /// Twisted-basis coefficient extractions and the geometric pairing.
  Poly cVcoh(const Poly& m, const Poly& hPart) const;
  Poly cWcoh(const Poly& m, const Poly& hPart) const;
  Poly bGeoCoh(const Poly& m1, const Poly& m2) const;

  /// Graded degree if homogeneous (deg x = y = z = hbar = 1, deg c_i = d_i =
  /// e_i = i), nullopt otherwise.
  std::optional<int> gradedDegree(const Poly& p) const;

  std::string str(const Poly& p) const;

 private:
  int n_;
  Poly xRepl_, yRepl_, zRepl_;  // replacements for x^n, y^{n-1}, z^{n-1}
  Poly reduceWith(const Poly& p, int v, int power, const Poly& repl) const;
};

/// Element of the two-factor module: basis monomial (x^i y^s) (x) (x^j y^t)
/// with coefficients in the base ring.
struct TensorVW {
  std::map<std::array<int, 4>, Poly> terms;
};

TensorVW swapVW(const TensorVW& t);

}  // namespace flagcoh

struct KappaReport {
  int n = 0;
  Scalar kappa{0};
  std::string witnessVV;     // c_V c_W value on the witness
  std::string witnessWV;     // c_W c_V sw value on the witness
  std::string witnessGeo;    // b_geo value on the witness
  int residualNonzero = 0;   // full-basis commutator residuals (exploratory)
  int basisChecked = 0;
  bool pass = false;
};

/// Solves the commutator identity for kappa on the witness x^{n-1} (x) y^{n-2}
/// and optionally cross-checks the identity on the whole monomial basis.
KappaReport computeKappa(int n, bool fullBasisCheck = false);

}  // namespace oddclif
