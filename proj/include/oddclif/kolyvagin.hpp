#pragma once

#include "oddclif/clifford.hpp"
#include "oddclif/lfun.hpp"

namespace oddclif {

struct KolyvaginError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// (M, omega, F, F-tilde) with F-tilde a scalar multiple of a GPin structure
/// lifting F (or zero).
struct KolyvaginPolarization {
  const CliffordContext* ctx;
  SuperMap F;
  CliffordElement Ft;

  KolyvaginPolarization(const CliffordContext& c, SuperMap f, CliffordElement ft);
};

/// Cl(M)-module T with an automorphism F_T intertwining the action through F.
struct EquivariantModule {
  const CliffordContext* ctx;
  std::vector<int> parities;  // parity of each module basis vector
  std::vector<Mat> action;    // one matrix per generator of M
  SuperMap F;
  Mat FT;
  std::optional<std::vector<int>> grading;

  EquivariantModule(const CliffordContext& c, std::vector<int> par, std::vector<Mat> act,
                    SuperMap f, Mat ft, std::optional<std::vector<int>> grad = std::nullopt);

  /// T = Sym^* L* with the automorphism induced by a polarization-stable F.
  static EquivariantModule standard(const CliffordContext& c, const SuperMap& f);

  int dimT() const { return static_cast<int>(parities.size()); }
};

/// The matrix on S = Sym^* L* induced functorially by the L*-block of a
/// polarization-stable F.
Mat standardModuleAutomorphism(const CliffordContext& ctx, const SuperMap& f);

struct KolyvaginSequence {
  const CliffordContext* ctx;
  std::vector<Tensor> entries;  // entries[r] has rank r

  int rMax() const { return static_cast<int>(entries.size()) - 1; }
};

KolyvaginSequence sequenceFromPolarization(const KolyvaginPolarization& pol, int rMax);
KolyvaginSequence sequenceFromModule(const EquivariantModule& mod, int rMax);

struct IterationFailure {
  int r;
  int slot;  // 1-based slot pair (slot, slot+1)
  std::vector<int> index;
};

/// Verifies the iteration identity for all r and adjacent slots; nullopt on
/// success, the first failing location otherwise.
std::optional<IterationFailure> checkIteration(const KolyvaginSequence& seq);

bool checkFrobeniusCompatibility(const KolyvaginSequence& seq, const SuperMap& F);

/// The unique Clifford element whose trace functional matches the sequence;
/// requires rMax >= 2n.
CliffordElement reconstructStructure(const KolyvaginSequence& seq);

/// Smallest r with z_r != 0; nullopt if all entries vanish up to rMax.
std::optional<int> order(const KolyvaginSequence& seq);

int fixedSpaceDim(const SuperMap& F);

/// Partial trace over the multiplicity space of T = S (x) V_T; requires
/// det(F) = 1.
CliffordElement trKoly(const EquivariantModule& mod);

Scalar lambdaOfModule(const EquivariantModule& mod);

/// alpha^2 times the lambda-value of the standard module, where alpha is the
/// F_T-eigenvalue on an L-killed eigenvector; requires a polarization-stable F.
Scalar lambdaViaHighestVector(const EquivariantModule& mod);

/// omega_r(z_r, z_r) for a materialized sequence entry (oracle route).
Scalar omegaPairSelf(const KolyvaginSequence& seq, int r);

struct KolylfunRow {
  int r;
  Scalar lhs;
  Scalar rhs;
  bool equal;
};

struct KolylfunReport {
  Scalar lambda{0};
  std::vector<KolylfunRow> rows;
  bool pass = true;
};

KolylfunReport verifyKolylfun(const KolyvaginPolarization& pol, int rMax,
                              std::optional<Scalar> lambdaOverride = std::nullopt);
KolylfunReport verifyKolylfun(const EquivariantModule& mod, int rMax,
                              std::optional<Scalar> lambdaOverride = std::nullopt);

}  // namespace oddclif
