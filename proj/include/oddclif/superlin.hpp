#pragma once

#include <string>
#include <vector>

#include "oddclif/linalg.hpp"

namespace oddclif {

struct SuperlinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite graded vector space. Basis indices enumerate the even basis first,
/// then the odd basis.
struct SuperSpace {
  std::vector<std::string> evenBasis;
  std::vector<std::string> oddBasis;

  static SuperSpace purelyOdd(std::vector<std::string> names) {
    return SuperSpace{{}, std::move(names)};
  }

  int evenDim() const { return static_cast<int>(evenBasis.size()); }
  int oddDim() const { return static_cast<int>(oddBasis.size()); }
  int dim() const { return evenDim() + oddDim(); }
  int parityOf(int i) const { return i < evenDim() ? 0 : 1; }
  const std::string& nameOf(int i) const {
    return i < evenDim() ? evenBasis[i] : oddBasis[i - evenDim()];
  }
  SuperSpace dual() const;

  friend bool operator==(const SuperSpace&, const SuperSpace&) = default;
};

/// r-th super tensor power; basis names joined with "(x)", parity additive.
SuperSpace tensorPower(const SuperSpace& v, int r);

/// Parity-homogeneous linear map, stored as a full matrix over the combined
/// bases; entries violating the parity pattern must vanish.
struct SuperMap {
  SuperSpace source;
  SuperSpace target;
  int parity = 0;
  Mat mat;

  SuperMap(SuperSpace src, SuperSpace tgt, int par, Mat m);
  static SuperMap identity(const SuperSpace& v);

  bool isSquare() const { return source == target; }
  SuperMap compose(const SuperMap& inner) const;  // this after inner
  SuperMap inverse() const;
};

Scalar supertrace(const SuperMap& a);
Scalar superdet(const SuperMap& a);

enum class FormClass { Symplectic, Orthogonal, General };

struct BilinearForm {
  SuperSpace space;
  Mat gram;  // gram(i, j) = form(basis_i, basis_j)
  FormClass formClass = FormClass::General;

  BilinearForm(SuperSpace sp, Mat g, FormClass cls);
  bool nonDegenerate() const { return nonDegenerate_; }
  Scalar operator()(const Vec& v, const Vec& w) const;

 private:
  bool nonDegenerate_ = false;
};

/// Dense rank-r tensor over the basis of `space`; row-major with the first
/// slot slowest.
struct Tensor {
  SuperSpace space;
  int rank = 0;
  std::vector<Scalar> entries;

  Tensor(SuperSpace sp, int r);
  size_t size() const { return entries.size(); }
  size_t flatIndex(const std::vector<int>& idx) const;
  Scalar& at(const std::vector<int>& idx) { return entries[flatIndex(idx)]; }
  const Scalar& at(const std::vector<int>& idx) const { return entries[flatIndex(idx)]; }
};

/// Transposes tensor slots i, i+1 (1-based i) with the Koszul sign.
Tensor koszulSwap(int i, const Tensor& t);

/// Canonical (odd-)symplectic form on V + V*; basis order: V basis then dual
/// basis, gram per ev - ev.sw.
BilinearForm canonicalSymplectic(const SuperSpace& v);

/// Canonical form on V + W from a non-degenerate even pairing b: V (x) W -> k.
BilinearForm canonicalSymplecticFromPairing(const SuperSpace& v, const SuperSpace& w,
                                            const Mat& b);

/// omega_r on the r-th tensor power of a purely odd space:
/// (-1)^{r(r-1)/2} prod omega(m_i, m'_i).
BilinearForm inducedTensorForm(const BilinearForm& omega, int r);

/// Pairs two rank-r tensors (components in the dual basis) under the induced
/// form without materializing its gram matrix.
Scalar pairTensors(const BilinearForm& omega, const Tensor& a, const Tensor& b);

/// n!-normalized form on Sym^n of a purely odd space (signed permutation sum).
/// Basis of Sym^n: strictly increasing index n-tuples.
Scalar symPowerFormValue(const BilinearForm& b, const std::vector<int>& left,
                         const std::vector<int>& right);

/// m -> omega(-, m) as a map M -> M*.
SuperMap dualIdentify(const BilinearForm& omega);

/// Coevaluation element of M* (x) M* for a non-degenerate form, returned as a
/// rank-2 tensor of components; the sign convention is fixed so that the
/// Kolyvagin iteration identity holds (see kolyvagin.hpp).
Tensor coevOfForm(const BilinearForm& omega);

}  // namespace oddclif
