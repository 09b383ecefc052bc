// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <iostream>
#include <random>

#include "oddclif/scenario.hpp"
#include "tensor_oracle.h"

using namespace oddclif;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — " << what
            << std::endl;
  if (!pass) ++failures;
}

SuperMap diagonalF(const CliffordContext& ctx, const std::vector<Scalar>& alphas,
                   bool swapFirst = false) {
  const int n = ctx.n();
  Mat m = zeroMat(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = alphas[static_cast<size_t>(i)];
    m(n + i, n + i) = alphas[static_cast<size_t>(i)].inverse();
  }
  if (swapFirst) {
    m(0, 0) = Scalar(0);
    m(n, n) = Scalar(0);
    m(0, n) = Scalar(-1);
    m(n, 0) = Scalar(-1);
  }
  return SuperMap(ctx.space(), ctx.space(), 0, m);
}

// 1. Module route, 100 random instances, n in 1..4, |entries| <= 5, r <= 8.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  for (int i = 0; i < 100 && pass; ++i) {
    const int n = 1 + i % 4;
    CliffordContext ctx(n);
    Mat fl = randomInvertibleIntMatrix(n, 1000 + static_cast<std::uint64_t>(i), 5);
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    auto mod = EquivariantModule::standard(ctx, f);
    pass = verifyKolylfun(mod, 8).pass;
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, pass && secs < 60.0,
         "module route, 100 random instances, n = 1..4, r = 0..8 (" +
             std::to_string(secs).substr(0, 5) + " s)");
}

// 2. Pin route with square eigenvalues, n <= 3, including det(F) = -1; the
// dim-2 displays.
void criterion2() {
  bool pass = true;
  const std::vector<Scalar> pool = {Scalar(4), Scalar(Rational(9, 4)), Scalar(25)};
  for (int n = 1; n <= 3 && pass; ++n) {
    CliffordContext ctx(n);
    for (bool swapFirst : {false, true}) {
      std::vector<Scalar> alphas(pool.begin(), pool.begin() + n);
      SuperMap f = diagonalF(ctx, alphas, swapFirst);
      CliffordElement ft = pinLiftSemisimple(ctx, f, 0);
      if (!verifyKolylfun(KolyvaginPolarization(ctx, f, ft), 6).pass) pass = false;
    }
  }
  {
    // dim-2 displays, including a non-square alpha through Q(sqrt(2)):
    // z_0 = alpha^{1/2} - alpha^{-1/2}, and for even r > 0 both sides are
    // (-1)^{r(r-1)/2+1} * 2
    CliffordContext ctx(1);
    SuperMap f = diagonalF(ctx, {Scalar(2)});
    CliffordElement ft = pinLiftSemisimple(ctx, f, 2);
    auto seq = sequenceFromPolarization(KolyvaginPolarization(ctx, f, ft), 6);
    Scalar z0 = seq.entries[0].entries[0];
    Scalar expected0 =
        Scalar(0, 1, 2) - Scalar(0, 1, 2).inverse();  // sqrt(2) - 1/sqrt(2)
    if (z0 != expected0) pass = false;
    auto rep = verifyKolylfun(KolyvaginPolarization(ctx, f, ft), 6);
    for (int r = 2; r <= 6; r += 2) {
      Scalar want((r * (r - 1) / 2 + 1) % 2 == 0 ? 2 : -2);
      if (rep.rows[static_cast<size_t>(r)].lhs != want) pass = false;
      if (rep.rows[static_cast<size_t>(r)].rhs != want) pass = false;
    }
    if (!rep.pass) pass = false;
  }
  report(2, pass, "pin route incl. det(F) = -1, n <= 3, r = 0..6, dim-2 displays");
}

// 3. computeKappa(n) = (-1)^{n-1} for n = 2..6 with the three witness values.
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  for (int n = 2; n <= 6 && pass; ++n) {
    KappaReport rep = computeKappa(n);
    if (!rep.pass || rep.kappa != Scalar((n % 2 == 1) ? 1 : -1)) pass = false;
    flagcoh::FlagRing R(n);
    auto expected = [&](int shift) {
      auto p = R.add(R.var(R.eVar(1)), R.scale(R.var(R.hVar()), Rational(shift)));
      return R.str(n % 2 == 0 ? p : R.scale(p, Rational(-1)));
    };
    if (rep.witnessVV != expected(n - 1)) pass = false;
    if (rep.witnessWV != expected(n - 2)) pass = false;
    if (rep.witnessGeo != "-1") pass = false;
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(3, pass && secs < 30.0,
         "commutator constant (-1)^{n-1} with witness values, n = 2..6 (" +
             std::to_string(secs).substr(0, 5) + " s)");
}

// 4. order(z) = dim M^{F=1} for engineered dimensions {0, 1, 2, 3, 2n}.
void criterion4() {
  bool pass = true;
  CliffordContext ctx(3);
  struct Case {
    std::vector<Scalar> alphas;
    bool swapFirst;
    int expect;
  };
  const Scalar a4(4), a1(1);
  std::vector<Case> cases = {
      {{a4, a4, a4}, false, 0}, {{a4, a4, a4}, true, 1}, {{a4, a4, a1}, false, 2},
      {{a4, a4, a1}, true, 3},  {{a1, a1, a1}, false, 6},
  };
  for (const auto& c : cases) {
    SuperMap f = diagonalF(ctx, c.alphas, c.swapFirst);
    if (fixedSpaceDim(f) != c.expect) pass = false;
    CliffordElement ft = pinLiftSemisimple(ctx, f, 0);
    auto seq = sequenceFromPolarization(KolyvaginPolarization(ctx, f, ft), 6);
    auto ord = order(seq);
    if (!ord || *ord != c.expect) pass = false;
  }
  report(4, pass, "order of the trace sequence equals dim M^{F=1} for dims 0,1,2,3,2n");
}

// 5. Characterizing identities + reconstruction roundtrip on every generated
// sequence.
void criterion5() {
  bool pass = true;
  std::mt19937_64 rng(77);
  for (int n : {1, 2}) {
    CliffordContext ctx(n);
    for (int trial = 0; trial < 5 && pass; ++trial) {
      Mat fl = randomInvertibleIntMatrix(n, rng(), 4);
      SuperMap f = orthogonalFromLBlock(ctx, fl);
      CliffordElement ft = elementFromOperator(ctx, standardModuleAutomorphism(ctx, f));
      KolyvaginPolarization pol(ctx, f, ft);
      auto seq = sequenceFromPolarization(pol, std::max(4, 2 * n));
      if (checkIteration(seq)) pass = false;
      if (!checkFrobeniusCompatibility(seq, f)) pass = false;
      if (!(reconstructStructure(seq) == ft)) pass = false;
    }
  }
  // pin-route sequences, both determinant signs
  CliffordContext ctx(2);
  for (bool swapFirst : {false, true}) {
    SuperMap f = diagonalF(ctx, {Scalar(4), Scalar(9)}, swapFirst);
    CliffordElement ft = pinLiftSemisimple(ctx, f, 0);
    auto seq = sequenceFromPolarization(KolyvaginPolarization(ctx, f, ft), 4);
    if (checkIteration(seq)) pass = false;
    if (!checkFrobeniusCompatibility(seq, f)) pass = false;
    if (!(reconstructStructure(seq) == ft)) pass = false;
  }
  report(5, pass, "iteration + Frobenius identities and exact reconstruction roundtrip");
}

// 6. Algebra trace equals module supertrace on all 4^n monomials, n <= 3.
void criterion6() {
  bool pass = true;
  for (int n = 1; n <= 3; ++n)
    for (int psign : {1, -1}) {
      CliffordContext ctx(n, psign);
      for (Word w = 0; w <= ctx.topWord(); ++w) {
        CliffordElement x(ctx, w, Scalar(1));
        if (topTrace(x) != topTraceDirect(x)) pass = false;
      }
    }
  report(6, pass, "trace through the module equals the top-graded trace on all monomials");
}

// 7. Oracle equivalences.
void criterion7() {
  bool pass = true;
  std::mt19937_64 rng(123);
  // (a) Clifford multiplication vs. the tensor-algebra-mod-ideal oracle
  for (int n : {1, 2}) {
    CliffordContext ctx(n);
    for (Word wa = 0; wa <= ctx.topWord() && pass; ++wa)
      for (Word wb = 0; wb <= ctx.topWord(); ++wb) {
        CliffordElement a(ctx, wa, Scalar(1));
        CliffordElement b(ctx, wb, Scalar(1));
        if (testing::toFree(a * b) != testing::oracleMultiply(ctx, a, b)) {
          pass = false;
          break;
        }
      }
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 200 && pass; ++trial) {
      CliffordElement a(ctx), b(ctx);
      for (Word w = 0; w <= ctx.topWord(); ++w) {
        a.addTerm(w, Scalar(dist(rng)));
        b.addTerm(w, Scalar(dist(rng)));
      }
      if (testing::toFree(a * b) != testing::oracleMultiply(ctx, a, b)) pass = false;
    }
  }
  // (b) central derivative vs. the symbolic oracle, q in {2, 3}, 50 random F
  for (int trial = 0; trial < 50 && pass; ++trial) {
    const int n = 1 + trial % 3;
    CliffordContext ctx(n);
    Mat fl = randomInvertibleIntMatrix(n, 500 + static_cast<std::uint64_t>(trial), 5);
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    for (int r = 0; r <= 6 && pass; ++r)
      for (int q : {2, 3})
        if (centralDerivative(f, r) != centralDerivativeSymbolicOracle(f, r, Rational(q)))
          pass = false;
  }
  // (c) the two lambda routes agree on polarized modules
  for (int n : {1, 2, 3}) {
    CliffordContext ctx(n);
    for (int trial = 0; trial < 5 && pass; ++trial) {
      Mat fl = randomInvertibleIntMatrix(n, rng(), 4);
      auto mod = EquivariantModule::standard(ctx, orthogonalFromLBlock(ctx, fl));
      if (lambdaOfModule(mod) != lambdaViaHighestVector(mod)) pass = false;
    }
  }
  report(7, pass, "multiplication, central-derivative, and lambda oracles all agree");
}

// 8. Convention stability: parity flip, scaling, block sums.
void criterion8() {
  bool pass = true;
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 3 && pass; ++trial) {
    const int n = 1 + trial % 2;
    Mat fl = randomInvertibleIntMatrix(n, rng(), 4);
    CliffordContext ctx(n);
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    auto mod = EquivariantModule::standard(ctx, f);
    auto base = verifyKolylfun(mod, 4);
    if (!base.pass) pass = false;

    CliffordContext ctxF(n, -1);
    auto modF = EquivariantModule::standard(ctxF, orthogonalFromLBlock(ctxF, fl));
    auto seq = sequenceFromModule(mod, 4);
    auto seqF = sequenceFromModule(modF, 4);
    for (int r = 0; r <= 4 && pass; ++r) {
      const auto& a = seq.entries[static_cast<size_t>(r)].entries;
      const auto& b = seqF.entries[static_cast<size_t>(r)].entries;
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != -b[i]) pass = false;
      if (omegaPairSelf(seq, r) != omegaPairSelf(seqF, r)) pass = false;
    }

    EquivariantModule scaled(ctx, mod.parities, mod.action, mod.F, Mat(mod.FT * Scalar(2)),
                             mod.grading);
    auto rep = verifyKolylfun(scaled, 4);
    if (!rep.pass || rep.lambda != base.lambda * Scalar(4)) pass = false;
    for (size_t i = 0; i < rep.rows.size(); ++i)
      if (rep.rows[i].lhs != base.rows[i].lhs * Scalar(4)) pass = false;

    // block sum with a fresh 1-dimensional block
    Mat fl2 = randomInvertibleIntMatrix(1, rng(), 4);
    Mat flSum = zeroMat(n + 1, n + 1);
    flSum.topLeftCorner(n, n) = fl;
    flSum.bottomRightCorner(1, 1) = fl2;
    CliffordContext ctxBig(n + 1), ctxSmall(1);
    bool block2 =
        verifyKolylfun(EquivariantModule::standard(ctxSmall, orthogonalFromLBlock(ctxSmall, fl2)), 4)
            .pass;
    bool whole =
        verifyKolylfun(EquivariantModule::standard(ctxBig, orthogonalFromLBlock(ctxBig, flSum)), 4)
            .pass;
    if (whole != (base.pass && block2)) pass = false;
  }
  report(8, pass, "parity-flip, scaling, and block-diagonal stability");
}

// 9. Determinism: repeated scenario runs produce byte-identical reports.
void criterion9() {
  bool pass = true;
  std::vector<nlohmann::json> scenarios = {
      {{"kind", "kolylfun"},
       {"route", "module"},
       {"n", 2},
       {"random", {{"seed", 42}, {"entry_bound", 5}}},
       {"r_max", 6},
       {"q_list", nlohmann::json::array({2, 3})}},
      {{"kind", "kolylfun"},
       {"route", "pin"},
       {"n", 2},
       {"alphas", nlohmann::json::array({"4/1", "2/1"})},
       {"d", 2},
       {"r_max", 4}},
      {{"kind", "kappa"}, {"n", 3}, {"full_basis", true}},
      {{"kind", "pin-lift"}, {"n", 1}, {"alphas", nlohmann::json::array({"4/1"})}},
      {{"kind", "selmer-order"}, {"n", 2}, {"fixed_dims", nlohmann::json::array({0, 1, 2})}},
      {{"kind", "conventions-fuzz"}, {"seed", 5}, {"iters", 4}},
  };
  for (const auto& sc : scenarios)
    for (const std::string fmt : {"json", "csv"}) {
      auto a = emitReport(runScenario(sc), fmt);
      auto b = emitReport(runScenario(sc), fmt);
      if (a != b || a.empty()) pass = false;
    }
  report(9, pass, "repeated scenario runs emit byte-identical reports");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return failures == 0 ? 0 : 1;
}
