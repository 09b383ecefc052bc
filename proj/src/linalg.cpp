#include "oddclif/linalg.hpp"

#include <algorithm>

namespace oddclif {

Mat zeroMat(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Scalar(0);
  return m;
}

Mat identityMat(Eigen::Index n) {
  Mat m = zeroMat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

bool isZeroMat(const Mat& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).isZero()) return false;
  return true;
}

Scalar exactDet(Mat a) {
  if (a.rows() != a.cols()) throw LinalgError("determinant of non-square matrix");
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!a(r, col).isZero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    Scalar inv = a(col, col).inverse();
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col).isZero()) continue;
      Scalar f = a(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

namespace {

// Row-reduces a in place; returns pivot columns. Optionally carries b along.
std::vector<Eigen::Index> rowReduce(Mat& a, Mat* b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < rows; ++r)
      if (!a(r, col).isZero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      a.row(piv).swap(a.row(row));
      if (b) b->row(piv).swap(b->row(row));
    }
    Scalar inv = a(row, col).inverse();
    for (Eigen::Index c = 0; c < cols; ++c) a(row, c) *= inv;
    if (b)
      for (Eigen::Index c = 0; c < b->cols(); ++c) (*b)(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).isZero()) continue;
      Scalar f = a(r, col);
      for (Eigen::Index c = 0; c < cols; ++c) a(r, c) -= f * a(row, c);
      if (b)
        for (Eigen::Index c = 0; c < b->cols(); ++c) (*b)(r, c) -= f * (*b)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Mat exactInverse(Mat a) {
  if (a.rows() != a.cols()) throw LinalgError("inverse of non-square matrix");
  Mat b = identityMat(a.rows());
  auto pivots = rowReduce(a, &b);
  if (static_cast<Eigen::Index>(pivots.size()) != a.rows())
    throw LinalgError("singular matrix has no inverse");
  return b;
}

Mat exactSolve(Mat a, Mat b) {
  if (a.rows() != b.rows()) throw LinalgError("solve: shape mismatch");
  if (a.rows() != a.cols()) throw LinalgError("solve: non-square system");
  auto pivots = rowReduce(a, &b);
  if (static_cast<Eigen::Index>(pivots.size()) != a.rows())
    throw LinalgError("solve: singular system");
  return b;
}

int exactRank(Mat a) { return static_cast<int>(rowReduce(a, nullptr).size()); }

Mat kernelBasis(const Mat& a) {
  Mat r = a;
  auto pivots = rowReduce(r, nullptr);
  const Eigen::Index cols = a.cols();
  std::vector<bool> isPivot(cols, false);
  for (auto p : pivots) isPivot[p] = true;
  std::vector<Eigen::Index> freeCols;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!isPivot[c]) freeCols.push_back(c);
  Mat out = zeroMat(cols, static_cast<Eigen::Index>(freeCols.size()));
  for (size_t k = 0; k < freeCols.size(); ++k) {
    Eigen::Index fc = freeCols[k];
    out(fc, k) = Scalar(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr) out(pivots[pr], k) = -r(pr, fc);
  }
  return out;
}

std::vector<Scalar> elementarySymmetric(const Mat& a) {
  if (a.rows() != a.cols()) throw LinalgError("elementarySymmetric: non-square matrix");
  const Eigen::Index n = a.rows();
  std::vector<Scalar> p(n + 1, Scalar(0));  // power sums p_1..p_n
  Mat pw = identityMat(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    pw = pw * a;
    Scalar t(0);
    for (Eigen::Index i = 0; i < n; ++i) t += pw(i, i);
    p[k] = t;
  }
  std::vector<Scalar> e(n + 1, Scalar(0));
  e[0] = Scalar(1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Scalar s(0);
    for (Eigen::Index i = 1; i <= k; ++i) {
      Scalar term = e[k - i] * p[i];
      s += (i % 2 == 1) ? term : -term;
    }
    e[k] = s * Scalar(Rational(1, k));
  }
  return e;
}

namespace {

std::vector<Integer> divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  for (Integer i = 1; i * i <= v; ++i) {
    if (v % i == 0) {
      out.push_back(i);
      out.push_back(v / i);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> rationalRoots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw LinalgError("rationalRoots: zero polynomial");
  std::vector<Rational> roots;
  while (coeffs.size() > 1) {
    // strip root 0
    if (coeffs.front() == 0) {
      roots.emplace_back(0);
      coeffs.erase(coeffs.begin());
      continue;
    }
    // integerize
    Integer lcm = 1;
    for (const auto& c : coeffs) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    std::vector<Integer> ic;
    ic.reserve(coeffs.size());
    for (const auto& c : coeffs) ic.push_back(Integer(c * Rational(lcm)));
    bool found = false;
    for (const Integer& p : divisors(ic.front())) {
      for (const Integer& q : divisors(ic.back())) {
        for (int sgn : {1, -1}) {
          Rational cand(sgn * p, q);
          Rational v(0);
          for (size_t k = coeffs.size(); k-- > 0;) v = v * cand + coeffs[k];
          if (v == 0) {
            roots.push_back(cand);
            // synthetic division by (x - cand)
            std::vector<Rational> next(coeffs.size() - 1);
            Rational carry = coeffs.back();
            for (size_t k = coeffs.size() - 1; k-- > 0;) {
              next[k] = carry;
              carry = coeffs[k] + carry * cand;
            }
            coeffs = std::move(next);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace oddclif
