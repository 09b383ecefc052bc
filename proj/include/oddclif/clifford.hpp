#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "oddclif/superlin.hpp"

namespace oddclif {

struct CliffordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A basis word of Cl(M) in normal form: bit i set means generator i occurs,
/// and the product is taken with indices ascending.
using Word = std::uint32_t;

inline int wordLength(Word w) { return __builtin_popcount(w); }

/// Clifford algebra context for a purely odd symplectic space of dimension
/// (0|2n) with the polarized basis order l_1 < ... < l_n < l*_1 < ... < l*_n
/// (indices 0..n-1 span L, n..2n-1 span L*) and the canonical pairing
/// omega(l_i, l*_j) = delta_ij (symmetric Gram).
class CliffordContext {
 public:
  explicit CliffordContext(int n, int paritySign = +1);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int paritySign() const { return paritySign_; }
  const SuperSpace& space() const { return space_; }
  const BilinearForm& omega() const { return omega_; }
  int partner(int i) const { return i < n_ ? i + n_ : i - n_; }
  Word topWord() const { return (Word{1} << (2 * n_)) - 1; }

  /// Module basis: subset masks over {0..n-1}, the word in the L*-generators.
  int moduleDim() const { return 1 << n_; }
  int moduleParity(int subset) const { return __builtin_popcount(subset) % 2; }

  /// Action of generator i on module basis vector `subset`; nullopt if zero,
  /// otherwise (resulting subset, +/-1 sign).
  std::optional<std::pair<int, int>> generatorAction(int i, int subset) const;

 private:
  int n_;
  int paritySign_;
  SuperSpace space_;
  BilinearForm omega_;
};

class CliffordElement {
 public:
  explicit CliffordElement(const CliffordContext& ctx) : ctx_(&ctx) {}
  CliffordElement(const CliffordContext& ctx, Word w, Scalar c);

  static CliffordElement scalar(const CliffordContext& ctx, Scalar c) {
    return CliffordElement(ctx, 0, std::move(c));
  }
  static CliffordElement generator(const CliffordContext& ctx, int i);
  /// Image of an M-vector (coordinates in the basis order of the context).
  static CliffordElement fromVector(const CliffordContext& ctx, const Vec& v);

  const CliffordContext& context() const { return *ctx_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  Scalar coeff(Word w) const;
  Scalar scalarPart() const { return coeff(0); }
  bool isScalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Parity if all words share length parity, else nullopt.
  std::optional<int> parity() const;
  int filtrationDegree() const;  // max word length; -1 for 0

  CliffordElement operator+(const CliffordElement& o) const;
  CliffordElement operator-(const CliffordElement& o) const;
  CliffordElement operator-() const;
  CliffordElement operator*(const CliffordElement& o) const;
  CliffordElement operator*(const Scalar& s) const;
  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  void addTerm(Word w, const Scalar& c);

 private:
  const CliffordContext* ctx_;
  std::map<Word, Scalar> terms_;  // nonzero coefficients only
};

/// Word-reversal anti-automorphism (identity on M).
CliffordElement transpose(const CliffordElement& x);

/// Matrix of x acting on the Clifford module S (subset basis).
Mat moduleAction(const CliffordElement& x);

/// Sparse action of a single normal-form word: for each column subset, the
/// (row subset, sign) it maps to, if any.
std::vector<std::optional<std::pair<int, int>>> wordAction(const CliffordContext& ctx, Word w);

/// Algebra trace through the module supertrace (primary route).
Scalar topTrace(const CliffordElement& x);
/// Same trace through the top-graded piece: parity sign times
/// (-1)^{n(n-1)/2} times the top-word coefficient.
Scalar topTraceDirect(const CliffordElement& x);

/// Inverse through the module: elementFromOperator(moduleAction(x)^{-1}).
CliffordElement cliffordInverse(const CliffordElement& x);

/// Twisted conjugation det(g) g m g^{-1} on a vector m of M.
Vec reflectionAction(const CliffordElement& g, const Vec& m);

/// True iff g is invertible and conjugation preserves M.
bool gpinCheck(const CliffordElement& g);

/// Spinor norm: scalar part of transpose(g) * g (the product must be scalar).
Scalar spinorNorm(const CliffordElement& g);

/// The orthogonal map on M induced by g (columns reflectionAction on basis
/// vectors); throws if g is not in GPin.
SuperMap inducedOrthogonal(const CliffordElement& g);

struct ModuleRep {
  const CliffordContext* ctx;
  std::vector<Mat> action;  // one 2^n x 2^n matrix per generator of M
};

ModuleRep cliffordModule(const CliffordContext& ctx);

/// The unique Clifford element acting on S as op (Morita inverse of
/// moduleAction). Uses the triangular complementary-word trace pairing.
CliffordElement elementFromOperator(const CliffordContext& ctx, const Mat& op);

/// Pin lift of a semisimple orthogonal F with eigenvalues in the field
/// Q(sqrt(d)). For det(F) = -1 a reflection vector y with F y = -y and
/// omega(y, y) a square times 2 must exist (or be supplied explicitly).
CliffordElement pinLiftSemisimple(const CliffordContext& ctx, const SuperMap& F, long long d,
                                  std::optional<Vec> reflectionVector = std::nullopt);

}  // namespace oddclif
