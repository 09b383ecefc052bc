#pragma once

#include <Eigen/Core>
#include <vector>

#include "oddclif/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<oddclif::Scalar> {
  typedef oddclif::Scalar Real;
  typedef oddclif::Scalar NonInteger;
  typedef oddclif::Scalar Literal;
  typedef oddclif::Scalar Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 32
  };
  static inline Real epsilon() { return oddclif::Scalar(0); }
  static inline Real dummy_precision() { return oddclif::Scalar(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace oddclif {

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Mat zeroMat(Eigen::Index rows, Eigen::Index cols);
Mat identityMat(Eigen::Index n);

bool isZeroMat(const Mat& a);

/// Exact determinant via Gaussian elimination with first-nonzero pivoting.
Scalar exactDet(Mat a);

/// Exact inverse; throws LinalgError on singular input.
Mat exactInverse(Mat a);

/// Solves a x = b exactly for (possibly multi-column) b; throws if singular.
Mat exactSolve(Mat a, Mat b);

int exactRank(Mat a);

/// Columns form a basis of the null space of a.
Mat kernelBasis(const Mat& a);

/// Elementary symmetric functions e_0..e_N of the eigenvalues of a
/// (coefficients of det(xI - a) up to sign), via Newton's identities on
/// exact power sums.
std::vector<Scalar> elementarySymmetric(const Mat& a);

/// All roots of sum_k coeffs[k] x^k that lie in Q, with multiplicity.
/// Returns nullopt unless the polynomial splits completely over Q.
std::optional<std::vector<Rational>> rationalRoots(std::vector<Rational> coeffs);

}  // namespace oddclif
