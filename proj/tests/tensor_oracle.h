#pragma once

// Brute-force multiplication oracle: elements of the free tensor algebra on
// the basis of M, reduced modulo the relation e_j e_i = omega(e_i, e_j) -
// e_i e_j (j > i) and e_i e_i = omega(e_i, e_i) / 2 by repeatedly rewriting
// the first out-of-order adjacent pair. Intentionally a different traversal
// from the library's insertion-based normal form.

#include <map>
#include <vector>

#include "oddclif/clifford.hpp"

namespace oddclif::testing {

using FreeWord = std::vector<int>;
using FreeElement = std::map<FreeWord, Scalar>;

inline void freeAdd(FreeElement& x, const FreeWord& w, const Scalar& c) {
  if (c.isZero()) return;
  auto it = x.find(w);
  if (it == x.end()) {
    x.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.isZero()) x.erase(it);
  }
}

inline FreeElement reduceFree(const CliffordContext& ctx, FreeElement x) {
  const Mat& g = ctx.omega().gram;
  while (true) {
    bool rewrote = false;
    FreeElement next;
    for (const auto& [w, c] : x) {
      size_t k = 0;
      while (k + 1 < w.size() && w[k] < w[k + 1]) ++k;
      if (k + 1 >= w.size()) {
        freeAdd(next, w, c);
        continue;
      }
      rewrote = true;
      FreeWord rest;
      rest.reserve(w.size() - 2);
      rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(k));
      rest.insert(rest.end(), w.begin() + static_cast<long>(k) + 2, w.end());
      if (w[k] == w[k + 1]) {
        freeAdd(next, rest, c * g(w[k], w[k]) / Scalar(2));
      } else {
        freeAdd(next, rest, c * g(w[k + 1], w[k]));
        FreeWord swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        freeAdd(next, swapped, -c);
      }
    }
    x = std::move(next);
    if (!rewrote) return x;
  }
}

inline FreeElement toFree(const CliffordElement& x) {
  FreeElement out;
  for (const auto& [w, c] : x.terms()) {
    FreeWord word;
    for (int i = 0; i < 32; ++i)
      if (w & (Word{1} << i)) word.push_back(i);
    out.emplace(word, c);
  }
  return out;
}

inline FreeElement oracleMultiply(const CliffordContext& ctx, const CliffordElement& a,
                                  const CliffordElement& b) {
  FreeElement out;
  for (const auto& [wa, ca] : toFree(a))
    for (const auto& [wb, cb] : toFree(b)) {
      FreeWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      freeAdd(out, w, ca * cb);
    }
  return reduceFree(ctx, out);
}

}  // namespace oddclif::testing
