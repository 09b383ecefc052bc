#include "oddclif/kolyvagin.hpp"

#include <algorithm>

namespace oddclif {

namespace {

constexpr size_t kMaterializeLimit = size_t{1} << 23;

size_t tuplesUpTo(int dim, int rMax) {
  size_t total = 0, cur = 1;
  for (int r = 0; r <= rMax; ++r) {
    total += cur;
    cur *= static_cast<size_t>(dim);
  }
  return total;
}

}  // namespace

KolyvaginPolarization::KolyvaginPolarization(const CliffordContext& c, SuperMap f,
                                            CliffordElement ft)
    : ctx(&c), F(std::move(f)), Ft(std::move(ft)) {
  if (!(F.source == c.space()) || !F.isSquare() || F.parity != 0)
    throw KolyvaginError("KolyvaginPolarization: F must be an even endomorphism of M");
  const Mat& g = c.omega().gram;
  if (!isZeroMat(F.mat.transpose() * g * F.mat - g))
    throw KolyvaginError("KolyvaginPolarization: F does not preserve omega");
  if (!Ft.isZero()) {
    if (!gpinCheck(Ft)) throw KolyvaginError("KolyvaginPolarization: F-tilde is not in GPin");
    if (!isZeroMat(inducedOrthogonal(Ft).mat - F.mat))
      throw KolyvaginError("KolyvaginPolarization: F-tilde does not lift F");
  }
}

EquivariantModule::EquivariantModule(const CliffordContext& c, std::vector<int> par,
                                     std::vector<Mat> act, SuperMap f, Mat ft,
                                     std::optional<std::vector<int>> grad)
    : ctx(&c),
      parities(std::move(par)),
      action(std::move(act)),
      F(std::move(f)),
      FT(std::move(ft)),
      grading(std::move(grad)) {
  const int d = dimT();
  if (static_cast<int>(action.size()) != c.dim())
    throw KolyvaginError("EquivariantModule: one action matrix per generator required");
  for (const Mat& a : action)
    if (a.rows() != d || a.cols() != d)
      throw KolyvaginError("EquivariantModule: action shape mismatch");
  if (FT.rows() != d || FT.cols() != d)
    throw KolyvaginError("EquivariantModule: F_T shape mismatch");
  for (int t = 0; t < d; ++t)
    for (int s = 0; s < d; ++s)
      if (!FT(t, s).isZero() && parities[t] != parities[s])
        throw KolyvaginError("EquivariantModule: F_T must be even");
  if (exactDet(FT).isZero()) throw KolyvaginError("EquivariantModule: F_T must be invertible");
  // Clifford relations
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i; j < c.dim(); ++j) {
      Mat lhs = action[i] * action[j] + action[j] * action[i];
      Mat rhs = identityMat(d) * c.omega().gram(i, j);
      if (!isZeroMat(lhs - rhs))
        throw KolyvaginError("EquivariantModule: Clifford relation violated");
    }
  // intertwining: a(F(x)) F_T = F_T a(x)
  for (int i = 0; i < c.dim(); ++i) {
    Mat af = zeroMat(d, d);
    for (int j = 0; j < c.dim(); ++j)
      if (!F.mat(j, i).isZero()) af += action[j] * F.mat(j, i);
    if (!isZeroMat(af * FT - FT * action[i]))
      throw KolyvaginError("EquivariantModule: intertwining property violated");
  }
}

Mat standardModuleAutomorphism(const CliffordContext& ctx, const SuperMap& f) {
  const int n = ctx.n();
  if (!isZeroMat(f.mat.topRightCorner(n, n)) || !isZeroMat(f.mat.bottomLeftCorner(n, n)))
    throw KolyvaginError("standardModuleAutomorphism: F must preserve the polarization");
  Mat b = f.mat.bottomRightCorner(n, n);  // action on the l*-basis
  const int N = ctx.moduleDim();
  Mat out = zeroMat(N, N);
  for (int col = 0; col < N; ++col) {
    // expand F(l*_{j1}) ... F(l*_{jk}) for the ascending generators of col
    std::map<int, Scalar> terms{{0, Scalar(1)}};
    for (int j = 0; j < n; ++j) {
      if (!(col & (1 << j))) continue;
      std::map<int, Scalar> next;
      for (const auto& [w, c] : terms) {
        for (int i = 0; i < n; ++i) {
          if (b(i, j).isZero() || (w & (1 << i))) continue;
          int pos = __builtin_popcount(w & ((1 << i) - 1));
          int moved = __builtin_popcount(w) - pos;  // elements the new factor passes
          Scalar v = c * b(i, j);
          if (moved % 2 == 1) v = -v;
          auto [it, ins] = next.try_emplace(w | (1 << i), v);
          if (!ins) {
            it->second += v;
            if (it->second.isZero()) next.erase(it);
          }
        }
      }
      terms = std::move(next);
    }
    for (const auto& [w, c] : terms) out(w, col) += c;
  }
  return out;
}

EquivariantModule EquivariantModule::standard(const CliffordContext& c, const SuperMap& f) {
  ModuleRep rep = cliffordModule(c);
  std::vector<int> par(c.moduleDim());
  std::vector<int> grad(c.moduleDim());
  for (int s = 0; s < c.moduleDim(); ++s) {
    par[s] = c.moduleParity(s);
    grad[s] = __builtin_popcount(static_cast<unsigned>(s));
  }
  return EquivariantModule(c, std::move(par), std::move(rep.action), f,
                           standardModuleAutomorphism(c, f), std::move(grad));
}

namespace {

void sequenceDfsElement(const CliffordContext& ctx, const CliffordElement& cur, int depth,
                        int rMax, std::vector<int>& idx, KolyvaginSequence& out) {
  {
    std::vector<int> tuple(idx.begin(), idx.begin() + depth);
    out.entries[depth].at(tuple) = topTrace(cur);
  }
  if (depth == rMax) return;
  for (int i = 0; i < ctx.dim(); ++i) {
    // prepend: the element for (i, i_1, ..., i_depth)
    CliffordElement next = CliffordElement::generator(ctx, i) * cur;
    idx.insert(idx.begin(), i);
    // idx holds the tuple left-to-right
    sequenceDfsElement(ctx, next, depth + 1, rMax, idx, out);
    idx.erase(idx.begin());
  }
}

}  // namespace

KolyvaginSequence sequenceFromPolarization(const KolyvaginPolarization& pol, int rMax) {
  const CliffordContext& ctx = *pol.ctx;
  if (rMax < 0) throw KolyvaginError("sequenceFromPolarization: negative r_max");
  if (tuplesUpTo(ctx.dim(), rMax) > kMaterializeLimit)
    throw KolyvaginError("sequenceFromPolarization: sequence too large to materialize");
  KolyvaginSequence out{&ctx, {}};
  for (int r = 0; r <= rMax; ++r) out.entries.emplace_back(ctx.space(), r);
  std::vector<int> idx;
  sequenceDfsElement(ctx, pol.Ft, 0, rMax, idx, out);
  return out;
}

namespace {

Scalar moduleSupertrace(const std::vector<int>& par, const Mat& m) {
  Scalar t(0);
  for (int i = 0; i < static_cast<int>(par.size()); ++i)
    t += par[i] == 0 ? m(i, i) : -m(i, i);
  return t;
}

struct SparseEntry {
  int row, col;
  Scalar val;
};

void sequenceDfsMatrix(const EquivariantModule& mod,
                       const std::vector<std::vector<SparseEntry>>& sparseAction,
                       const Mat& cur, int depth, int rMax, std::vector<int>& idx,
                       KolyvaginSequence& out) {
  {
    std::vector<int> tuple(idx.begin(), idx.begin() + depth);
    Scalar val = moduleSupertrace(mod.parities, cur);
    // The algebra trace carries the parity-choice sign on top of the module
    // supertrace; keep both sequence routes identified.
    out.entries[depth].at(tuple) = mod.ctx->paritySign() == 1 ? val : -val;
  }
  if (depth == rMax) return;
  const int d = mod.dimT();
  for (int i = 0; i < mod.ctx->dim(); ++i) {
    Mat next = zeroMat(d, d);
    for (const auto& e : sparseAction[static_cast<size_t>(i)])
      for (int c = 0; c < d; ++c)
        if (!cur(e.col, c).isZero()) next(e.row, c) += e.val * cur(e.col, c);
    idx.insert(idx.begin(), i);
    sequenceDfsMatrix(mod, sparseAction, next, depth + 1, rMax, idx, out);
    idx.erase(idx.begin());
  }
}

}  // namespace

KolyvaginSequence sequenceFromModule(const EquivariantModule& mod, int rMax) {
  const CliffordContext& ctx = *mod.ctx;
  if (rMax < 0) throw KolyvaginError("sequenceFromModule: negative r_max");
  if (tuplesUpTo(ctx.dim(), rMax) * static_cast<size_t>(mod.dimT()) > kMaterializeLimit)
    throw KolyvaginError("sequenceFromModule: sequence too large to materialize");
  KolyvaginSequence out{&ctx, {}};
  for (int r = 0; r <= rMax; ++r) out.entries.emplace_back(ctx.space(), r);
  std::vector<int> idx;
  std::vector<std::vector<SparseEntry>> sparseAction(static_cast<size_t>(ctx.dim()));
  for (int i = 0; i < ctx.dim(); ++i)
    for (int a = 0; a < mod.dimT(); ++a)
      for (int c = 0; c < mod.dimT(); ++c)
        if (!mod.action[static_cast<size_t>(i)](a, c).isZero())
          sparseAction[static_cast<size_t>(i)].push_back(
              {a, c, mod.action[static_cast<size_t>(i)](a, c)});
  sequenceDfsMatrix(mod, sparseAction, mod.FT, 0, rMax, idx, out);
  return out;
}

std::optional<IterationFailure> checkIteration(const KolyvaginSequence& seq) {
  const CliffordContext& ctx = *seq.ctx;
  const int dim = ctx.dim();
  Tensor coev = coevOfForm(ctx.omega());
  for (int r = 2; r <= seq.rMax(); ++r) {
    const Tensor& z = seq.entries[r];
    const Tensor& zm = seq.entries[r - 2];
    std::vector<int> idx(r, 0);
    for (size_t flat = 0; flat < z.size(); ++flat) {
      for (int slot = 1; slot <= r - 1; ++slot) {
        std::vector<int> swapped = idx;
        std::swap(swapped[slot - 1], swapped[slot]);
        Scalar lhs = z.entries[flat] + z.at(swapped);
        std::vector<int> rest;
        rest.reserve(r - 2);
        for (int k = 0; k < r; ++k)
          if (k != slot - 1 && k != slot) rest.push_back(idx[k]);
        Scalar rhs = coev.at({idx[slot - 1], idx[slot]}) * zm.at(rest);
        if (lhs != rhs) return IterationFailure{r, slot, idx};
      }
      for (int k = r - 1; k >= 0; --k) {
        if (++idx[k] < dim) break;
        idx[k] = 0;
      }
    }
  }
  return std::nullopt;
}

bool checkFrobeniusCompatibility(const KolyvaginSequence& seq, const SuperMap& F) {
  const CliffordContext& ctx = *seq.ctx;
  const int dim = ctx.dim();
  Mat finv = exactInverse(F.mat);
  for (int r = 1; r <= seq.rMax(); ++r) {
    const Tensor& z = seq.entries[r];
    std::vector<int> idx(r, 0);
    for (size_t flat = 0; flat < z.size(); ++flat) {
      // z(i_1..i_r) = (-1)^{r-1} sum_j Finv(j, i_r) z(j, i_1..i_{r-1})
      Scalar rhs(0);
      std::vector<int> rotated(r);
      std::copy(idx.begin(), idx.end() - 1, rotated.begin() + 1);
      for (int j = 0; j < dim; ++j) {
        if (finv(j, idx[r - 1]).isZero()) continue;
        rotated[0] = j;
        rhs += finv(j, idx[r - 1]) * z.at(rotated);
      }
      if (r % 2 == 0) rhs = -rhs;
      if (z.entries[flat] != rhs) return false;
      for (int k = r - 1; k >= 0; --k) {
        if (++idx[k] < dim) break;
        idx[k] = 0;
      }
    }
  }
  return true;
}

CliffordElement reconstructStructure(const KolyvaginSequence& seq) {
  const CliffordContext& ctx = *seq.ctx;
  if (seq.rMax() < ctx.dim())
    throw KolyvaginError("reconstructStructure: need entries up to r = dim M");
  auto target = [&](Word u) {
    std::vector<int> tuple;
    for (int i = 0; i < ctx.dim(); ++i)
      if (u & (Word{1} << i)) tuple.push_back(i);
    return seq.entries[tuple.size()].at(tuple);
  };
  const Word top = ctx.topWord();
  std::vector<Word> words(top + 1);
  for (Word w = 0; w <= top; ++w) words[w] = w;
  std::stable_sort(words.begin(), words.end(),
                   [](Word a, Word b) { return wordLength(a) > wordLength(b); });
  CliffordElement out(ctx);
  for (Word w : words) {
    const Word wc = top ^ w;
    Scalar val = target(wc);
    // subtract the already-determined longer words (trace pairing is
    // triangular: tr(wc * w') = 0 unless w' contains w)
    for (Word s = wc; s; s = (s - 1) & wc) {
      Word wp = w | s;
      Scalar c = out.coeff(wp);
      if (c.isZero()) continue;
      Scalar tr = topTrace(CliffordElement(ctx, wc, Scalar(1)) *
                           CliffordElement(ctx, wp, Scalar(1)));
      val -= c * tr;
    }
    Scalar nu = topTrace(CliffordElement(ctx, wc, Scalar(1)) *
                         CliffordElement(ctx, w, Scalar(1)));
    if (nu.isZero()) throw KolyvaginError("reconstructStructure: degenerate trace pairing");
    Scalar cw = val / nu;
    if (!cw.isZero()) out.addTerm(w, cw);
  }
  // consistency: the remaining entries (possibly with repeated indices) must
  // match the reconstructed element's trace functional
  for (int r = 0; r <= std::min(seq.rMax(), ctx.dim()); ++r) {
    const Tensor& z = seq.entries[r];
    std::vector<int> idx(r, 0);
    for (size_t flat = 0; flat < z.size(); ++flat) {
      CliffordElement el = out;
      for (int k = r - 1; k >= 0; --k)
        el = CliffordElement::generator(ctx, idx[k]) * el;
      if (topTrace(el) != z.entries[flat])
        throw KolyvaginError("reconstructStructure: inconsistent sequence");
      for (int k = r - 1; k >= 0; --k) {
        if (++idx[k] < ctx.dim()) break;
        idx[k] = 0;
      }
    }
  }
  return out;
}

std::optional<int> order(const KolyvaginSequence& seq) {
  for (int r = 0; r <= seq.rMax(); ++r)
    for (const Scalar& c : seq.entries[r].entries)
      if (!c.isZero()) return r;
  return std::nullopt;
}

int fixedSpaceDim(const SuperMap& F) {
  if (!F.isSquare()) throw KolyvaginError("fixedSpaceDim: non-square map");
  return F.source.dim() - exactRank(F.mat - identityMat(F.source.dim()));
}

namespace {

/// Restriction X of an operator to the column span of K: K X = op K.
Mat restrictToSpan(const Mat& K, const Mat& op) {
  const Eigen::Index m = K.cols();
  // greedily pick independent rows of K
  std::vector<Eigen::Index> rows;
  Mat sel(0, m);
  for (Eigen::Index i = 0; i < K.rows() && static_cast<Eigen::Index>(rows.size()) < m; ++i) {
    Mat cand(sel.rows() + 1, m);
    for (Eigen::Index rr = 0; rr < sel.rows(); ++rr) cand.row(rr) = sel.row(rr);
    cand.row(sel.rows()) = K.row(i);
    if (exactRank(cand) == static_cast<int>(cand.rows())) {
      sel = cand;
      rows.push_back(i);
    }
  }
  if (static_cast<Eigen::Index>(rows.size()) != m)
    throw KolyvaginError("restrictToSpan: columns not independent");
  Mat ksub(m, m), osub(m, m);
  Mat opk = op * K;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      ksub(a, b) = K(rows[a], b);
      osub(a, b) = opk(rows[a], b);
    }
  return exactSolve(ksub, osub);
}

}  // namespace

CliffordElement trKoly(const EquivariantModule& mod) {
  const CliffordContext& ctx = *mod.ctx;
  if (exactDet(mod.F.mat) != Scalar(1))
    throw KolyvaginError("trKoly: requires det(F) = 1 on M");
  const int d = mod.dimT();
  const int N = ctx.moduleDim();
  ModuleRep rep = cliffordModule(ctx);
  if (d == N) {
    // T = S itself: the multiplicity space is a line and the partial trace is
    // the Morita inverse of F_T.
    bool sameAction = true;
    for (int i = 0; i < ctx.dim() && sameAction; ++i)
      sameAction = isZeroMat(Mat(mod.action[i] - rep.action[i]));
    if (sameAction) return elementFromOperator(ctx, mod.FT);
  }
  // module homomorphisms S -> T: H with A_T[i] H = H A_S[i] for all i
  const int unknowns = d * N;
  Mat sys = zeroMat(ctx.dim() * unknowns, unknowns);
  auto u = [&](int t, int s) { return t * N + s; };
  int row = 0;
  for (int i = 0; i < ctx.dim(); ++i) {
    for (int t = 0; t < d; ++t)
      for (int s = 0; s < N; ++s) {
        for (int k = 0; k < d; ++k)
          if (!mod.action[i](t, k).isZero()) sys(row, u(k, s)) += mod.action[i](t, k);
        for (int k = 0; k < N; ++k)
          if (!rep.action[i](k, s).isZero()) sys(row, u(t, k)) -= rep.action[i](k, s);
        ++row;
      }
  }
  Mat ker = kernelBasis(sys);
  // split each solution into parity-homogeneous parts (each is a solution)
  std::vector<std::pair<Mat, int>> homs;  // (H, parity)
  Mat stacked(unknowns, 0);
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    for (int p = 0; p < 2; ++p) {
      Mat h = zeroMat(d, N);
      bool nonzero = false;
      for (int t = 0; t < d; ++t)
        for (int s = 0; s < N; ++s) {
          if ((mod.parities[t] + ctx.moduleParity(s)) % 2 != p) continue;
          h(t, s) = ker(u(t, s), c);
          if (!h(t, s).isZero()) nonzero = true;
        }
      if (!nonzero) continue;
      // keep only if independent of what we have
      Mat cand(unknowns, stacked.cols() + 1);
      for (Eigen::Index cc = 0; cc < stacked.cols(); ++cc) cand.col(cc) = stacked.col(cc);
      for (int t = 0; t < d; ++t)
        for (int s = 0; s < N; ++s) cand(u(t, s), stacked.cols()) = h(t, s);
      if (exactRank(cand) == cand.cols()) {
        stacked = cand;
        homs.emplace_back(std::move(h), p);
      }
    }
  }
  const int k = static_cast<int>(homs.size());
  if (k * N != d)
    throw KolyvaginError("trKoly: module does not decompose as S tensor V_T");
  // Phi: S (x) V_T -> T, column (s, j) -> phi_j(s)
  Mat phi = zeroMat(d, d);
  for (int s = 0; s < N; ++s)
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < d; ++t) phi(t, s * k + j) = homs[j].first(t, s);
  Mat g = exactSolve(phi, mod.FT * phi);
  Mat x = zeroMat(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Scalar v(0);
      for (int j = 0; j < k; ++j) {
        const Scalar& e = g(a * k + j, b * k + j);
        v += homs[j].second == 0 ? e : -e;
      }
      x(a, b) = v;
    }
  return elementFromOperator(ctx, x);
}

Scalar lambdaOfModule(const EquivariantModule& mod) {
  CliffordElement t = trKoly(mod);
  if (t.isZero()) return Scalar(0);
  return spinorNorm(t);
}

Scalar lambdaViaHighestVector(const EquivariantModule& mod) {
  const CliffordContext& ctx = *mod.ctx;
  const int n = ctx.n();
  if (!isZeroMat(mod.F.mat.topRightCorner(n, n)) ||
      !isZeroMat(mod.F.mat.bottomLeftCorner(n, n)))
    throw KolyvaginError("lambdaViaHighestVector: needs an F-stable polarization");
  // highest vectors: killed by every l_i
  const int d = mod.dimT();
  Mat stack = zeroMat(n * d, d);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) stack(i * d + a, b) = mod.action[i](a, b);
  Mat ker = kernelBasis(stack);
  if (ker.cols() == 0)
    throw KolyvaginError("lambdaViaHighestVector: no L-killed vector");
  Mat x = restrictToSpan(ker, mod.FT);
  // rational eigenvalue of the restriction with an eigenvector
  auto e = elementarySymmetric(x);
  std::vector<Rational> cp(e.size());
  for (size_t kk = 0; kk < e.size(); ++kk) {
    if (!e[kk].isRational())
      throw KolyvaginError("lambdaViaHighestVector: non-rational eigen data");
    cp[e.size() - 1 - kk] = (kk % 2 == 0) ? e[kk].rat() : -e[kk].rat();
  }
  auto roots = rationalRoots(cp);
  if (!roots || roots->empty())
    throw KolyvaginError("lambdaViaHighestVector: eigenvalue not in the field");
  Scalar alpha((*roots)[0]);
  Scalar lambda0 = spinorNorm(elementFromOperator(ctx, standardModuleAutomorphism(ctx, mod.F)));
  return alpha * alpha * lambda0;
}

Scalar omegaPairSelf(const KolyvaginSequence& seq, int r) {
  if (r < 0 || r > seq.rMax()) throw KolyvaginError("omegaPairSelf: r out of range");
  return pairTensors(seq.ctx->omega(), seq.entries[r], seq.entries[r]);
}

namespace {

struct Triplet {
  int row, col;
  Scalar val;
};

/// omega_r(z_r, z_r) for every r = 0..rMax at once, through the supertrace of
/// K^r (F_T (x) F_T) on T (x) T, K = sum_i a(e_i) (x) a(e_{sigma(i)}) with the
/// Koszul sign on the second factor.
std::vector<Scalar> lhsViaSquaredTrace(const CliffordContext& ctx,
                                       const std::vector<int>& par,
                                       const std::vector<Mat>& action, const Mat& ft,
                                       int rMax) {
  const int d = static_cast<int>(par.size());
  const int dd = d * d;
  std::vector<Triplet> K;
  for (int i = 0; i < ctx.dim(); ++i) {
    const Mat& A = action[i];
    const Mat& B = action[ctx.partner(i)];
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) {
        if (A(a, c).isZero()) continue;
        Scalar base = par[c] == 0 ? A(a, c) : -A(a, c);
        for (int b = 0; b < d; ++b)
          for (int e = 0; e < d; ++e) {
            if (B(b, e).isZero()) continue;
            K.push_back({a * d + b, c * d + e, base * B(b, e)});
          }
      }
  }
  // Fast path: when every entry is a plain rational, clear denominators once
  // and iterate in integers (avoids per-operation gcd normalization).
  bool allRational = true;
  for (const auto& t : K)
    if (!t.val.isRational()) allRational = false;
  for (int a = 0; a < d && allRational; ++a)
    for (int c = 0; c < d; ++c)
      if (!ft(a, c).isRational()) {
        allRational = false;
        break;
      }
  if (allRational) {
    Integer dk(1);
    for (const auto& t : K) dk = boost::multiprecision::lcm(dk, denominator(t.val.rat()));
    Integer df(1);
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) df = boost::multiprecision::lcm(df, denominator(ft(a, c).rat()));
    struct ITriplet {
      int row, col;
      Integer val;
    };
    std::vector<ITriplet> ki;
    ki.reserve(K.size());
    for (const auto& t : K)
      ki.push_back({t.row, t.col, numerator(t.val.rat()) * (dk / denominator(t.val.rat()))});
    std::vector<Integer> fi(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c)
        fi[static_cast<size_t>(a) * d + c] =
            numerator(ft(a, c).rat()) * (df / denominator(ft(a, c).rat()));
    std::vector<Integer> mi(static_cast<size_t>(dd) * dd, Integer(0));
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) {
        const Integer& fac = fi[static_cast<size_t>(a) * d + c];
        if (fac == 0) continue;
        for (int b = 0; b < d; ++b)
          for (int e = 0; e < d; ++e) {
            const Integer& fbe = fi[static_cast<size_t>(b) * d + e];
            if (fbe == 0) continue;
            mi[(static_cast<size_t>(a) * d + b) * dd + c * d + e] = fac * fbe;
          }
      }
    std::vector<Scalar> out;
    out.reserve(rMax + 1);
    Integer scale = df * df;
    auto record = [&]() {
      Integer t(0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const Integer& v = mi[(static_cast<size_t>(a) * d + b) * dd + a * d + b];
          if (v == 0) continue;
          if ((par[a] + par[b]) % 2 == 0)
            t += v;
          else
            t -= v;
        }
      out.push_back(Scalar(Rational(t, scale)));
    };
    record();
    std::vector<Integer> next(mi.size(), Integer(0));
    for (int r = 1; r <= rMax; ++r) {
      std::fill(next.begin(), next.end(), Integer(0));
      for (const auto& t : ki) {
        const Integer* src = &mi[static_cast<size_t>(t.col) * dd];
        Integer* dst = &next[static_cast<size_t>(t.row) * dd];
        for (int cc = 0; cc < dd; ++cc)
          if (src[cc] != 0) dst[cc] += t.val * src[cc];
      }
      std::swap(mi, next);
      scale *= dk;
      record();
    }
    return out;
  }
  std::vector<Scalar> m(static_cast<size_t>(dd) * dd, Scalar(0));
  auto at = [&](int rr, int cc) -> Scalar& { return m[static_cast<size_t>(rr) * dd + cc]; };
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      if (ft(a, c).isZero()) continue;
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
          if (ft(b, e).isZero()) continue;
          at(a * d + b, c * d + e) = ft(a, c) * ft(b, e);
        }
    }
  std::vector<Scalar> out;
  out.reserve(rMax + 1);
  auto record = [&]() {
    Scalar t(0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Scalar& v = at(a * d + b, a * d + b);
        if (v.isZero()) continue;
        t += (par[a] + par[b]) % 2 == 0 ? v : -v;
      }
    out.push_back(t);
  };
  record();
  std::vector<Scalar> next(m.size(), Scalar(0));
  for (int r = 1; r <= rMax; ++r) {
    std::fill(next.begin(), next.end(), Scalar(0));
    for (const auto& t : K) {
      const Scalar* src = &m[static_cast<size_t>(t.col) * dd];
      Scalar* dst = &next[static_cast<size_t>(t.row) * dd];
      for (int cc = 0; cc < dd; ++cc)
        if (!src[cc].isZero()) dst[cc] += t.val * src[cc];
    }
    std::swap(m, next);
    record();
  }
  return out;
}

KolylfunReport buildReport(const CliffordContext& ctx, const SuperMap& F,
                           const std::vector<int>& par, const std::vector<Mat>& action,
                           const Mat& ft, int rMax, const Scalar& lambda) {
  KolylfunReport rep;
  rep.lambda = lambda;
  std::vector<Scalar> lhs = lhsViaSquaredTrace(ctx, par, action, ft, rMax);
  for (int r = 0; r <= rMax; ++r) {
    Scalar rhs = lambda * epsilonSign(ctx.n(), r) * centralDerivative(F, r);
    bool eq = lhs[r] == rhs;
    rep.rows.push_back({r, lhs[r], rhs, eq});
    rep.pass = rep.pass && eq;
  }
  return rep;
}

}  // namespace

KolylfunReport verifyKolylfun(const KolyvaginPolarization& pol, int rMax,
                              std::optional<Scalar> lambdaOverride) {
  const CliffordContext& ctx = *pol.ctx;
  Scalar lambda = lambdaOverride ? *lambdaOverride
                                 : (pol.Ft.isZero() ? Scalar(0) : spinorNorm(pol.Ft));
  auto parityFt = pol.Ft.parity();
  if (pol.Ft.isZero() || (parityFt && *parityFt == 0)) {
    // even structure: squared-trace route
    ModuleRep rep = cliffordModule(ctx);
    std::vector<int> par(ctx.moduleDim());
    for (int s = 0; s < ctx.moduleDim(); ++s) par[s] = ctx.moduleParity(s);
    Mat ft = moduleAction(pol.Ft);
    if (ctx.paritySign() == -1) ft = -ft;
    return buildReport(ctx, pol.F, par, rep.action, ft, rMax, lambda);
  }
  // odd structure (det F = -1): pair the materialized sequence directly
  KolyvaginSequence seq = sequenceFromPolarization(pol, rMax);
  KolylfunReport rep;
  rep.lambda = lambda;
  for (int r = 0; r <= rMax; ++r) {
    Scalar lhs = omegaPairSelf(seq, r);
    Scalar rhs = lambda * epsilonSign(ctx.n(), r) * centralDerivative(pol.F, r);
    bool eq = lhs == rhs;
    rep.rows.push_back({r, lhs, rhs, eq});
    rep.pass = rep.pass && eq;
  }
  return rep;
}

KolylfunReport verifyKolylfun(const EquivariantModule& mod, int rMax,
                              std::optional<Scalar> lambdaOverride) {
  Scalar lambda = lambdaOverride ? *lambdaOverride : lambdaOfModule(mod);
  return buildReport(*mod.ctx, mod.F, mod.parities, mod.action, mod.FT, rMax, lambda);
}

}  // namespace oddclif
