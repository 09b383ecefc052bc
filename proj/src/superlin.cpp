#include "oddclif/superlin.hpp"

namespace oddclif {

SuperSpace SuperSpace::dual() const {
  SuperSpace d;
  for (const auto& n : evenBasis) d.evenBasis.push_back(n + "^");
  for (const auto& n : oddBasis) d.oddBasis.push_back(n + "^");
  return d;
}

SuperSpace tensorPower(const SuperSpace& v, int r) {
  if (r < 0) throw SuperlinError("tensorPower: negative rank");
  if (v.evenDim() != 0)
    throw SuperlinError("tensorPower: only purely odd spaces are supported");
  // All slots are odd, so every basis tuple has parity r mod 2 and the
  // enumeration order (row-major tuples) is preserved.
  std::vector<std::string> names;
  size_t total = 1;
  for (int k = 0; k < r; ++k) total *= static_cast<size_t>(v.dim());
  names.reserve(total);
  std::vector<int> idx(r, 0);
  for (size_t flat = 0; flat < total; ++flat) {
    std::string nm;
    for (int k = 0; k < r; ++k) nm += (k ? "(x)" : "") + v.nameOf(idx[k]);
    if (r == 0) nm = "1";
    names.push_back(nm);
    for (int k = r - 1; k >= 0; --k) {
      if (++idx[k] < v.dim()) break;
      idx[k] = 0;
    }
  }
  return (r % 2 == 0) ? SuperSpace{std::move(names), {}}
                      : SuperSpace{{}, std::move(names)};
}

SuperMap::SuperMap(SuperSpace src, SuperSpace tgt, int par, Mat m)
    : source(std::move(src)), target(std::move(tgt)), parity(par), mat(std::move(m)) {
  if (mat.rows() != target.dim() || mat.cols() != source.dim())
    throw SuperlinError("SuperMap: matrix shape mismatch");
  if (parity != 0 && parity != 1) throw SuperlinError("SuperMap: parity must be 0 or 1");
  for (Eigen::Index i = 0; i < mat.rows(); ++i)
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      if (!mat(i, j).isZero() &&
          target.parityOf(static_cast<int>(i)) !=
              (source.parityOf(static_cast<int>(j)) + parity) % 2)
        throw SuperlinError("SuperMap: entry violates the parity pattern");
}

SuperMap SuperMap::identity(const SuperSpace& v) {
  return SuperMap(v, v, 0, identityMat(v.dim()));
}

SuperMap SuperMap::compose(const SuperMap& inner) const {
  if (inner.target != source) throw SuperlinError("compose: space mismatch");
  return SuperMap(inner.source, target, (parity + inner.parity) % 2, mat * inner.mat);
}

SuperMap SuperMap::inverse() const {
  if (!isSquare() || parity != 0) throw SuperlinError("inverse: need even square map");
  return SuperMap(source, target, 0, exactInverse(mat));
}

Scalar supertrace(const SuperMap& a) {
  if (!a.isSquare()) throw SuperlinError("supertrace: non-square map");
  Scalar t(0);
  for (int i = 0; i < a.source.dim(); ++i)
    t += a.source.parityOf(i) == 0 ? a.mat(i, i) : -a.mat(i, i);
  return t;
}

Scalar superdet(const SuperMap& a) {
  if (!a.isSquare() || a.parity != 0) throw SuperlinError("superdet: need even square map");
  const int p = a.source.evenDim(), q = a.source.oddDim();
  Mat ev = a.mat.topLeftCorner(p, p);
  Mat od = a.mat.bottomRightCorner(q, q);
  Scalar dodd = exactDet(od);
  if (dodd.isZero()) throw SuperlinError("superdet: singular odd block");
  return exactDet(ev) / dodd;
}

BilinearForm::BilinearForm(SuperSpace sp, Mat g, FormClass cls)
    : space(std::move(sp)), gram(std::move(g)), formClass(cls) {
  if (gram.rows() != space.dim() || gram.cols() != space.dim())
    throw SuperlinError("BilinearForm: gram shape mismatch");
  nonDegenerate_ = !exactDet(gram).isZero();
}

Scalar BilinearForm::operator()(const Vec& v, const Vec& w) const {
  Scalar t(0);
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j)
      if (!gram(i, j).isZero()) t += v(i) * gram(i, j) * w(j);
  return t;
}

Tensor::Tensor(SuperSpace sp, int r) : space(std::move(sp)), rank(r) {
  if (r < 0) throw SuperlinError("Tensor: negative rank");
  size_t total = 1;
  for (int k = 0; k < r; ++k) total *= static_cast<size_t>(space.dim());
  entries.assign(total, Scalar(0));
}

size_t Tensor::flatIndex(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank) throw SuperlinError("Tensor: rank mismatch");
  size_t flat = 0;
  for (int k = 0; k < rank; ++k) {
    if (idx[k] < 0 || idx[k] >= space.dim()) throw SuperlinError("Tensor: index out of range");
    flat = flat * static_cast<size_t>(space.dim()) + static_cast<size_t>(idx[k]);
  }
  return flat;
}

Tensor koszulSwap(int i, const Tensor& t) {
  if (i < 1 || i > t.rank - 1) throw SuperlinError("koszulSwap: slot out of range");
  Tensor out(t.space, t.rank);
  const int dim = t.space.dim();
  std::vector<int> idx(t.rank, 0);
  for (size_t flat = 0; flat < t.size(); ++flat) {
    if (!t.entries[flat].isZero()) {
      std::vector<int> jdx = idx;
      std::swap(jdx[i - 1], jdx[i]);
      int sign = t.space.parityOf(idx[i - 1]) * t.space.parityOf(idx[i]);
      out.at(jdx) = sign ? -t.entries[flat] : t.entries[flat];
    }
    for (int k = t.rank - 1; k >= 0; --k) {
      if (++idx[k] < dim) break;
      idx[k] = 0;
    }
  }
  return out;
}

BilinearForm canonicalSymplecticFromPairing(const SuperSpace& v, const SuperSpace& w,
                                            const Mat& b) {
  if (b.rows() != v.dim() || b.cols() != w.dim())
    throw SuperlinError("canonicalSymplecticFromPairing: pairing shape mismatch");
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j)
      if (!b(i, j).isZero() && v.parityOf(i) != w.parityOf(j))
        throw SuperlinError("canonicalSymplecticFromPairing: pairing must be even");
  if (exactDet(b).isZero())
    throw SuperlinError("canonicalSymplecticFromPairing: degenerate pairing");
  SuperSpace total;
  total.evenBasis = v.evenBasis;
  total.evenBasis.insert(total.evenBasis.end(), w.evenBasis.begin(), w.evenBasis.end());
  total.oddBasis = v.oddBasis;
  total.oddBasis.insert(total.oddBasis.end(), w.oddBasis.begin(), w.oddBasis.end());
  // Combined index of the i-th basis vector of V resp. the j-th of W: evens of
  // V, evens of W, odds of V, odds of W.
  auto idxV = [&](int i) {
    return v.parityOf(i) == 0 ? i : w.evenDim() + i;
  };
  auto idxW = [&](int j) {
    return w.parityOf(j) == 0 ? v.evenDim() + j : v.oddDim() + v.evenDim() + j;
  };
  Mat gram = zeroMat(total.dim(), total.dim());
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j) {
      if (b(i, j).isZero()) continue;
      int sign = (1 + v.parityOf(i) * w.parityOf(j)) % 2 == 0 ? 1 : -1;
      gram(idxV(i), idxW(j)) = b(i, j);
      gram(idxW(j), idxV(i)) = sign == 1 ? b(i, j) : -b(i, j);
    }
  return BilinearForm(std::move(total), std::move(gram), FormClass::Symplectic);
}

BilinearForm canonicalSymplectic(const SuperSpace& v) {
  return canonicalSymplecticFromPairing(v, v.dual(), identityMat(v.dim()));
}

BilinearForm inducedTensorForm(const BilinearForm& omega, int r) {
  if (r < 0) throw SuperlinError("inducedTensorForm: negative rank");
  if (omega.space.evenDim() != 0)
    throw SuperlinError("inducedTensorForm: space must be purely odd");
  SuperSpace power = tensorPower(omega.space, r);
  const int dim = omega.space.dim();
  const size_t total = static_cast<size_t>(power.dim());
  Mat gram = zeroMat(power.dim(), power.dim());
  int sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
  std::vector<int> I(r, 0), J(r, 0);
  for (size_t a = 0; a < total; ++a) {
    std::fill(J.begin(), J.end(), 0);
    for (size_t b = 0; b < total; ++b) {
      Scalar prod(sign);
      for (int k = 0; k < r; ++k) {
        prod *= omega.gram(I[k], J[k]);
        if (prod.isZero()) break;
      }
      gram(a, b) = prod;
      for (int k = r - 1; k >= 0; --k) {
        if (++J[k] < dim) break;
        J[k] = 0;
      }
    }
    for (int k = r - 1; k >= 0; --k) {
      if (++I[k] < dim) break;
      I[k] = 0;
    }
  }
  return BilinearForm(std::move(power), std::move(gram), FormClass::General);
}

Scalar pairTensors(const BilinearForm& omega, const Tensor& a, const Tensor& b) {
  if (a.rank != b.rank || !(a.space == omega.space) || !(b.space == omega.space))
    throw SuperlinError("pairTensors: mismatched tensors");
  const int r = a.rank, dim = omega.space.dim();
  // Components are in the dual basis; transport one factor with gram^{-1} per
  // slot and contract.
  Mat ginv = exactInverse(omega.gram);
  std::vector<Scalar> cur = b.entries;
  size_t total = cur.size();
  for (int slot = 0; slot < r; ++slot) {
    std::vector<Scalar> next(total, Scalar(0));
    size_t stride = 1;
    for (int k = slot + 1; k < r; ++k) stride *= static_cast<size_t>(dim);
    for (size_t flat = 0; flat < total; ++flat) {
      if (cur[flat].isZero()) continue;
      size_t pos = (flat / stride) % static_cast<size_t>(dim);
      size_t base = flat - pos * stride;
      for (int i = 0; i < dim; ++i) {
        const Scalar& g = ginv(i, static_cast<Eigen::Index>(pos));
        if (!g.isZero()) next[base + static_cast<size_t>(i) * stride] += g * cur[flat];
      }
    }
    cur = std::move(next);
  }
  Scalar dot(0);
  for (size_t flat = 0; flat < total; ++flat)
    if (!a.entries[flat].isZero() && !cur[flat].isZero()) dot += a.entries[flat] * cur[flat];
  int sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
  return sign == 1 ? dot : -dot;
}

Scalar symPowerFormValue(const BilinearForm& b, const std::vector<int>& left,
                         const std::vector<int>& right) {
  if (b.space.evenDim() != 0)
    throw SuperlinError("symPowerFormValue: space must be purely odd");
  if (left.size() != right.size()) throw SuperlinError("symPowerFormValue: rank mismatch");
  const int n = static_cast<int>(left.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = b.gram(left[i], right[j]);
  Scalar det = exactDet(m);
  int sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  return sign == 1 ? det : -det;
}

SuperMap dualIdentify(const BilinearForm& omega) {
  if (!omega.nonDegenerate()) throw SuperlinError("dualIdentify: degenerate form");
  return SuperMap(omega.space, omega.space.dual(), 0, omega.gram);
}

Tensor coevOfForm(const BilinearForm& omega) {
  if (!omega.nonDegenerate()) throw SuperlinError("coevOfForm: degenerate form");
  Tensor t(omega.space, 2);
  Mat ginv = exactInverse(omega.gram);
  const int dim = omega.space.dim();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) t.at({i, j}) = ginv(i, j);
  return t;
}

}  // namespace oddclif
