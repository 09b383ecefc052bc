#include "oddclif/clifford.hpp"

#include <algorithm>

namespace oddclif {

namespace {

SuperSpace makeOddSpace(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("l" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("l" + std::to_string(i) + "*");
  return SuperSpace::purelyOdd(std::move(names));
}

Mat canonicalGram(int n) {
  Mat g = zeroMat(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    g(i, n + i) = Scalar(1);
    g(n + i, i) = Scalar(1);
  }
  return g;
}

}  // namespace

CliffordContext::CliffordContext(int n, int paritySign)
    : n_(n),
      paritySign_(paritySign),
      space_(makeOddSpace(n)),
      omega_(space_, canonicalGram(n), FormClass::Symplectic) {
  if (n < 1 || n > 15) throw CliffordError("CliffordContext: n out of range");
  if (paritySign != 1 && paritySign != -1)
    throw CliffordError("CliffordContext: parity sign must be +1 or -1");
}

std::optional<std::pair<int, int>> CliffordContext::generatorAction(int i, int subset) const {
  if (i < 0 || i >= dim()) throw CliffordError("generatorAction: index out of range");
  if (i >= n_) {
    int j = i - n_;  // left multiplication by l*_j with exterior sign
    if (subset & (1 << j)) return std::nullopt;
    int pos = __builtin_popcount(subset & ((1 << j) - 1));
    return std::make_pair(subset | (1 << j), pos % 2 == 0 ? 1 : -1);
  }
  // signed contraction against omega(l_i, l*_j) = delta_ij
  if (!(subset & (1 << i))) return std::nullopt;
  int pos = __builtin_popcount(subset & ((1 << i) - 1));
  return std::make_pair(subset & ~(1 << i), pos % 2 == 0 ? 1 : -1);
}

CliffordElement::CliffordElement(const CliffordContext& ctx, Word w, Scalar c) : ctx_(&ctx) {
  if (w >= (Word{1} << ctx.dim())) throw CliffordError("CliffordElement: word out of range");
  addTerm(w, c);
}

CliffordElement CliffordElement::generator(const CliffordContext& ctx, int i) {
  if (i < 0 || i >= ctx.dim()) throw CliffordError("generator: index out of range");
  return CliffordElement(ctx, Word{1} << i, Scalar(1));
}

CliffordElement CliffordElement::fromVector(const CliffordContext& ctx, const Vec& v) {
  if (v.size() != ctx.dim()) throw CliffordError("fromVector: dimension mismatch");
  CliffordElement out(ctx);
  for (int i = 0; i < ctx.dim(); ++i) out.addTerm(Word{1} << i, v(i));
  return out;
}

Scalar CliffordElement::coeff(Word w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<int> CliffordElement::parity() const {
  std::optional<int> p;
  for (const auto& [w, c] : terms_) {
    int wp = wordLength(w) % 2;
    if (!p)
      p = wp;
    else if (*p != wp)
      return std::nullopt;
  }
  return p ? p : std::optional<int>(0);
}

int CliffordElement::filtrationDegree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, wordLength(w));
  return d;
}

void CliffordElement::addTerm(Word w, const Scalar& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
  if (ctx_ != o.ctx_) throw CliffordError("context mismatch");
  CliffordElement out = *this;
  for (const auto& [w, c] : o.terms_) out.addTerm(w, c);
  return out;
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
  if (ctx_ != o.ctx_) throw CliffordError("context mismatch");
  CliffordElement out = *this;
  for (const auto& [w, c] : o.terms_) out.addTerm(w, -c);
  return out;
}

CliffordElement CliffordElement::operator-() const {
  CliffordElement out(*ctx_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

CliffordElement CliffordElement::operator*(const Scalar& s) const {
  CliffordElement out(*ctx_);
  if (s.isZero()) return out;
  for (const auto& [w, c] : terms_) out.addTerm(w, c * s);
  return out;
}

namespace {

/// Multiplies a normal-form word w on the right by generator b:
/// w * e_b = sum of normal-form terms. With the canonical Gram, e_b squares
/// to zero and contracts only against its partner.
void insertGenerator(const CliffordContext& ctx, Word w, int b, const Scalar& c,
                     std::vector<std::pair<Word, Scalar>>& out) {
  const Word bit = Word{1} << b;
  // e_b bubbles left past every element of w above b; each adjacent rewrite
  // e_a e_b = omega(a,b) - e_b e_a contributes a contraction when a is the
  // omega-partner of b.
  if (b < ctx.n()) {
    const int p = b + ctx.n();
    if (w & (Word{1} << p)) {
      int passed = __builtin_popcount(w >> (p + 1));
      Scalar coeff = (passed % 2 == 0) ? c : -c;
      out.emplace_back(w & ~(Word{1} << p), std::move(coeff));
    }
  }
  if (!(w & bit)) {
    int above = __builtin_popcount(w >> (b + 1));
    out.emplace_back(w | bit, (above % 2 == 0) ? c : -c);
  }
}

}  // namespace

CliffordElement CliffordElement::operator*(const CliffordElement& o) const {
  if (ctx_ != o.ctx_) throw CliffordError("context mismatch");
  CliffordElement out(*ctx_);
  std::vector<std::pair<Word, Scalar>> cur, next;
  for (const auto& [w2, c2] : o.terms_) {
    // peel the generators of w2, lowest index first (that is their order in
    // the normal-form product)
    for (const auto& [w1, c1] : terms_) {
      cur.clear();
      cur.emplace_back(w1, c1 * c2);
      for (int b = 0; b < ctx_->dim(); ++b) {
        if (!(w2 & (Word{1} << b))) continue;
        next.clear();
        for (const auto& [w, c] : cur) insertGenerator(*ctx_, w, b, c, next);
        std::swap(cur, next);
      }
      for (const auto& [w, c] : cur) out.addTerm(w, c);
    }
  }
  return out;
}

CliffordElement transpose(const CliffordElement& x) {
  const CliffordContext& ctx = x.context();
  CliffordElement out(ctx);
  std::vector<std::pair<Word, Scalar>> cur, next;
  for (const auto& [w, c] : x.terms()) {
    cur.clear();
    cur.emplace_back(Word{0}, c);
    // reversed word: multiply the generators highest index first
    for (int b = ctx.dim() - 1; b >= 0; --b) {
      if (!(w & (Word{1} << b))) continue;
      next.clear();
      for (const auto& [pw, pc] : cur) insertGenerator(ctx, pw, b, pc, next);
      std::swap(cur, next);
    }
    for (const auto& [pw, pc] : cur) out.addTerm(pw, pc);
  }
  return out;
}

std::vector<std::optional<std::pair<int, int>>> wordAction(const CliffordContext& ctx, Word w) {
  const int N = ctx.moduleDim();
  std::vector<std::optional<std::pair<int, int>>> out(N);
  for (int col = 0; col < N; ++col) {
    int subset = col, sign = 1;
    bool alive = true;
    // a(e_{i1}) o ... o a(e_{ik}) with i1 < ... < ik: rightmost factor first
    for (int b = ctx.dim() - 1; b >= 0 && alive; --b) {
      if (!(w & (Word{1} << b))) continue;
      auto step = ctx.generatorAction(b, subset);
      if (!step) {
        alive = false;
        break;
      }
      subset = step->first;
      sign *= step->second;
    }
    if (alive) out[col] = std::make_pair(subset, sign);
  }
  return out;
}

Mat moduleAction(const CliffordElement& x) {
  const CliffordContext& ctx = x.context();
  const int N = ctx.moduleDim();
  Mat mat = zeroMat(N, N);
  for (const auto& [w, c] : x.terms()) {
    auto act = wordAction(ctx, w);
    for (int col = 0; col < N; ++col)
      if (act[col]) mat(act[col]->first, col) += act[col]->second > 0 ? c : -c;
  }
  return mat;
}

Scalar topTrace(const CliffordElement& x) {
  const CliffordContext& ctx = x.context();
  Scalar t(0);
  for (const auto& [w, c] : x.terms()) {
    auto act = wordAction(ctx, w);
    for (int col = 0; col < ctx.moduleDim(); ++col) {
      if (!act[col] || act[col]->first != col) continue;
      Scalar v = act[col]->second > 0 ? c : -c;
      t += ctx.moduleParity(col) == 0 ? v : -v;
    }
  }
  return ctx.paritySign() == 1 ? t : -t;
}

Scalar topTraceDirect(const CliffordElement& x) {
  const CliffordContext& ctx = x.context();
  const int n = ctx.n();
  Scalar c = x.coeff(ctx.topWord());
  int sign = ctx.paritySign() * ((n * (n - 1) / 2) % 2 == 0 ? 1 : -1);
  return sign == 1 ? c : -c;
}

CliffordElement cliffordInverse(const CliffordElement& x) {
  return elementFromOperator(x.context(), exactInverse(moduleAction(x)));
}

Vec reflectionAction(const CliffordElement& g, const Vec& m) {
  const CliffordContext& ctx = g.context();
  auto p = g.parity();
  if (!p) throw CliffordError("reflectionAction: g must be parity-pure");
  CliffordElement mhat = CliffordElement::fromVector(ctx, m);
  CliffordElement conj = g * mhat * cliffordInverse(g);
  if (*p == 1) conj = -conj;  // det(g) = (-1)^{|g|}
  Vec out(ctx.dim());
  for (int i = 0; i < ctx.dim(); ++i) out(i) = Scalar(0);
  for (const auto& [w, c] : conj.terms()) {
    if (wordLength(w) != 1) throw CliffordError("reflectionAction: image leaves M");
    out(__builtin_ctz(w)) = c;
  }
  return out;
}

bool gpinCheck(const CliffordElement& g) {
  const CliffordContext& ctx = g.context();
  if (g.isZero() || !g.parity()) return false;
  Mat act = moduleAction(g);
  if (exactDet(act).isZero()) return false;
  CliffordElement ginv = elementFromOperator(ctx, exactInverse(act));
  for (int i = 0; i < ctx.dim(); ++i) {
    CliffordElement conj = g * CliffordElement::generator(ctx, i) * ginv;
    for (const auto& [w, c] : conj.terms())
      if (wordLength(w) != 1) return false;
  }
  return true;
}

Scalar spinorNorm(const CliffordElement& g) {
  CliffordElement p = transpose(g) * g;
  if (!p.isScalar())
    throw CliffordError("spinorNorm: transpose(g)*g is not scalar (g not in GPin?)");
  return p.scalarPart();
}

SuperMap inducedOrthogonal(const CliffordElement& g) {
  const CliffordContext& ctx = g.context();
  Mat f = zeroMat(ctx.dim(), ctx.dim());
  for (int j = 0; j < ctx.dim(); ++j) {
    Vec ej(ctx.dim());
    for (int i = 0; i < ctx.dim(); ++i) ej(i) = Scalar(i == j ? 1 : 0);
    Vec img = reflectionAction(g, ej);
    for (int i = 0; i < ctx.dim(); ++i) f(i, j) = img(i);
  }
  return SuperMap(ctx.space(), ctx.space(), 0, std::move(f));
}

ModuleRep cliffordModule(const CliffordContext& ctx) {
  ModuleRep rep{&ctx, {}};
  for (int i = 0; i < ctx.dim(); ++i)
    rep.action.push_back(moduleAction(CliffordElement::generator(ctx, i)));
  return rep;
}

CliffordElement elementFromOperator(const CliffordContext& ctx, const Mat& op) {
  const int N = ctx.moduleDim();
  if (op.rows() != N || op.cols() != N)
    throw CliffordError("elementFromOperator: shape mismatch");
  const Word top = ctx.topWord();
  std::vector<Word> words(top + 1);
  for (Word w = 0; w <= top; ++w) words[w] = w;
  std::stable_sort(words.begin(), words.end(),
                   [](Word a, Word b) { return wordLength(a) > wordLength(b); });
  Mat residual = op;
  CliffordElement out(ctx);
  for (Word w : words) {
    const Word wc = top ^ w;
    // tr(wc * residual) through the sparse action of wc
    auto actC = wordAction(ctx, wc);
    Scalar val(0);
    for (int col = 0; col < N; ++col) {
      if (!actC[col]) continue;
      auto [row, sgn] = *actC[col];
      Scalar term = residual(col, row);
      if (term.isZero()) continue;
      if (sgn < 0) term = -term;
      val += ctx.moduleParity(row) == 0 ? term : -term;
    }
    if (ctx.paritySign() == -1) val = -val;
    // normalizer tr(wc * w): the pairing is triangular for the subset order,
    // so after removing longer words only w itself can contribute
    Scalar nu = topTraceDirect(CliffordElement(ctx, wc, Scalar(1)) *
                               CliffordElement(ctx, w, Scalar(1)));
    if (nu.isZero()) throw CliffordError("elementFromOperator: degenerate trace pairing");
    Scalar cw = val / nu;
    if (cw.isZero()) continue;
    out.addTerm(w, cw);
    auto actW = wordAction(ctx, w);
    for (int col = 0; col < N; ++col) {
      if (!actW[col]) continue;
      auto [row, sgn] = *actW[col];
      residual(row, col) -= sgn > 0 ? cw : -cw;
    }
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!residual(i, j).isZero())
        throw CliffordError("elementFromOperator: operator not matched (broken module?)");
  return out;
}

namespace {

struct HyperbolicPair {
  Vec e;
  Vec estar;
  Scalar alpha;
};

Scalar formValue(const CliffordContext& ctx, const Vec& a, const Vec& b) {
  return ctx.omega()(a, b);
}

/// Splits the restriction of omega to an eigenspace (eigenvalue +1 or -1,
/// even dimension) into hyperbolic pairs over Q(sqrt(d)).
std::vector<HyperbolicPair> polarizeEigenspace(const CliffordContext& ctx, Mat basis,
                                               const Scalar& alpha, long long d) {
  std::vector<HyperbolicPair> out;
  while (basis.cols() > 0) {
    const Eigen::Index m = basis.cols();
    if (m == 1) throw CliffordError("pinLiftSemisimple: odd-dimensional eigenspace");
    // find a nonzero isotropic vector in the span
    std::optional<Vec> iso;
    for (Eigen::Index i = 0; i < m && !iso; ++i)
      if (formValue(ctx, basis.col(i), basis.col(i)).isZero()) iso = Vec(basis.col(i));
    for (Eigen::Index i = 0; i < m && !iso; ++i)
      for (Eigen::Index j = 0; j < m && !iso; ++j) {
        if (i == j) continue;
        // solve q(b_i + t b_j) = 0: q_ii + 2 t q_ij + t^2 q_jj = 0
        Scalar qii = formValue(ctx, basis.col(i), basis.col(i));
        Scalar qij = formValue(ctx, basis.col(i), basis.col(j));
        Scalar qjj = formValue(ctx, basis.col(j), basis.col(j));
        if (qjj.isZero()) continue;  // handled by the direct scan
        Scalar disc = qij * qij - qii * qjj;
        auto root = Scalar::sqrtInField(disc, d);
        if (!root) continue;
        Scalar t = (-qij + *root) / qjj;
        Vec v = basis.col(i) + basis.col(j) * t;
        bool nonzero = false;
        for (Eigen::Index k = 0; k < v.size(); ++k)
          if (!v(k).isZero()) nonzero = true;
        if (nonzero) iso = v;
      }
    if (!iso)
      throw CliffordError(
          "pinLiftSemisimple: no isotropic vector over the field (anisotropic eigenspace)");
    // partner with omega(e, e*) = 1, e* isotropic
    std::optional<Vec> partner;
    for (Eigen::Index i = 0; i < m && !partner; ++i) {
      Scalar p = formValue(ctx, *iso, basis.col(i));
      if (!p.isZero()) partner = Vec(basis.col(i) * p.inverse());
    }
    if (!partner) throw CliffordError("pinLiftSemisimple: degenerate eigenspace restriction");
    Scalar self = formValue(ctx, *partner, *partner);
    Vec estar = *partner - *iso * (self * Scalar(Rational(1, 2)));
    out.push_back({*iso, estar, alpha});
    // restrict to the omega-complement of the pair inside the eigenspace
    Mat constraints = zeroMat(2, ctx.dim());
    for (int c = 0; c < ctx.dim(); ++c) {
      Scalar a0(0), a1(0);
      for (int rr = 0; rr < ctx.dim(); ++rr) {
        a0 += (*iso)(rr)*ctx.omega().gram(rr, c);
        a1 += estar(rr) * ctx.omega().gram(rr, c);
      }
      constraints(0, c) = a0;
      constraints(1, c) = a1;
    }
    Mat coeffCons = constraints * basis;  // conditions on span coordinates
    Mat coords = kernelBasis(coeffCons);
    basis = basis * coords;
  }
  return out;
}

CliffordElement liftFromPairs(const CliffordContext& ctx,
                              const std::vector<HyperbolicPair>& pairs, long long d) {
  CliffordElement out = CliffordElement::scalar(ctx, Scalar(1));
  for (const auto& p : pairs) {
    auto root = Scalar::sqrtInField(p.alpha, d);
    if (!root)
      throw CliffordError("pinLiftSemisimple: eigenvalue square root not in the field");
    CliffordElement e = CliffordElement::fromVector(ctx, p.e);
    CliffordElement es = CliffordElement::fromVector(ctx, p.estar);
    CliffordElement factor = (e * es) * *root + (es * e) * root->inverse();
    out = out * factor;
  }
  return out;
}

}  // namespace

CliffordElement pinLiftSemisimple(const CliffordContext& ctx, const SuperMap& F, long long d,
                                  std::optional<Vec> reflectionVector) {
  if (!(F.source == ctx.space()) || !F.isSquare() || F.parity != 0)
    throw CliffordError("pinLiftSemisimple: F must be an even endomorphism of M");
  const Mat& G = ctx.omega().gram;
  if (!isZeroMat(F.mat.transpose() * G * F.mat - G))
    throw CliffordError("pinLiftSemisimple: F does not preserve omega");
  Scalar det = exactDet(F.mat);
  CliffordElement lift(ctx);
  if (det == Scalar(-1)) {
    Vec y(ctx.dim());
    if (reflectionVector) {
      y = *reflectionVector;
    } else {
      // search ker(F + 1) for a vector with omega(y,y) scalable to 2
      Mat ker = kernelBasis(F.mat + identityMat(ctx.dim()));
      std::optional<Vec> found;
      for (Eigen::Index i = 0; i < ker.cols() && !found; ++i) {
        Scalar q = formValue(ctx, ker.col(i), ker.col(i));
        if (!q.isZero() && Scalar::sqrtInField(Scalar(2) / q, d)) found = Vec(ker.col(i));
      }
      for (Eigen::Index i = 0; i < ker.cols() && !found; ++i)
        for (Eigen::Index j = i + 1; j < ker.cols() && !found; ++j) {
          Vec v = ker.col(i) + ker.col(j);
          Scalar q = formValue(ctx, v, v);
          if (!q.isZero() && Scalar::sqrtInField(Scalar(2) / q, d)) found = v;
        }
      if (!found)
        throw CliffordError(
            "pinLiftSemisimple: no reflection vector found for det(F) = -1; supply one");
      y = *found;
    }
    Vec fy = F.mat * y;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (fy(i) != -y(i)) throw CliffordError("pinLiftSemisimple: F y != -y");
    Scalar q = formValue(ctx, y, y);
    auto scale = Scalar::sqrtInField(Scalar(2) / q, d);
    if (!scale)
      throw CliffordError("pinLiftSemisimple: omega(y,y) not scalable to 2 in the field");
    y = y * *scale;
    // R_y(m) = m - omega(m, y) y; G' = F o R_y has det +1
    Mat ry = identityMat(ctx.dim());
    for (int cidx = 0; cidx < ctx.dim(); ++cidx) {
      Vec basis(ctx.dim());
      for (int i = 0; i < ctx.dim(); ++i) basis(i) = Scalar(i == cidx ? 1 : 0);
      Scalar c = formValue(ctx, basis, y);
      for (int i = 0; i < ctx.dim(); ++i) ry(i, cidx) -= c * y(i);
    }
    SuperMap Gmap(ctx.space(), ctx.space(), 0, F.mat * ry);
    lift = pinLiftSemisimple(ctx, Gmap, d) * CliffordElement::fromVector(ctx, y);
  } else if (det == Scalar(1)) {
    auto esym = elementarySymmetric(F.mat);
    std::vector<Rational> charpoly(esym.size());
    for (size_t k = 0; k < esym.size(); ++k) {
      if (!esym[k].isRational())
        throw CliffordError("pinLiftSemisimple: non-rational characteristic data");
      Rational c = esym[k].rat();
      charpoly[esym.size() - 1 - k] = (k % 2 == 0) ? c : -c;
    }
    auto roots = rationalRoots(charpoly);
    if (!roots) throw CliffordError("pinLiftSemisimple: eigenvalues not in the field");
    std::map<Rational, int> mult;
    for (const auto& r : *roots) ++mult[r];
    std::vector<HyperbolicPair> pairs;
    for (const auto& [alpha, m] : mult) {
      if (alpha == 0) throw CliffordError("pinLiftSemisimple: singular F");
      Rational inv = Rational(1) / alpha;
      if (alpha > inv) continue;  // handle each {alpha, 1/alpha} once
      Mat ea = kernelBasis(F.mat - identityMat(ctx.dim()) * Scalar(alpha));
      if (alpha == inv) {  // alpha = +-1: polarize the eigenspace itself
        auto ps = polarizeEigenspace(ctx, ea, Scalar(alpha), d);
        pairs.insert(pairs.end(), ps.begin(), ps.end());
        continue;
      }
      Mat eb = kernelBasis(F.mat - identityMat(ctx.dim()) * Scalar(inv));
      if (ea.cols() != eb.cols())
        throw CliffordError("pinLiftSemisimple: F not semisimple or eigenspace mismatch");
      // dualize: omega restricted to E_alpha x E_{1/alpha} is non-degenerate
      Mat pairing = ea.transpose() * ctx.omega().gram * eb;
      Mat dual = eb * exactInverse(pairing).transpose();
      for (Eigen::Index i = 0; i < ea.cols(); ++i)
        pairs.push_back({Vec(ea.col(i)), Vec(dual.col(i)), Scalar(alpha)});
    }
    if (static_cast<int>(pairs.size()) != ctx.n())
      throw CliffordError("pinLiftSemisimple: F not semisimple over the field");
    lift = liftFromPairs(ctx, pairs, d);
  } else {
    throw CliffordError("pinLiftSemisimple: det(F) must be +-1");
  }
  if (!isZeroMat(inducedOrthogonal(lift).mat - F.mat))
    throw CliffordError("pinLiftSemisimple: lift verification failed");
  if (spinorNorm(lift) != Scalar(1))
    throw CliffordError("pinLiftSemisimple: spinor norm of lift is not 1");
  return lift;
}

}  // namespace oddclif
