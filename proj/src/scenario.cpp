#include "oddclif/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace oddclif {

int ScenarioReport::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const ReportRow& r) { return !r.equal; }));
}

SuperMap orthogonalFromLBlock(const CliffordContext& ctx, const Mat& fl) {
  const int n = ctx.n();
  if (fl.rows() != n || fl.cols() != n) throw ScenarioError("F_L has the wrong shape");
  Scalar det = exactDet(fl);
  if (det.isZero()) throw ScenarioError("F_L must be invertible");
  Mat m = zeroMat(2 * n, 2 * n);
  m.topLeftCorner(n, n) = fl;
  m.bottomRightCorner(n, n) = exactInverse(fl.transpose());
  return SuperMap(ctx.space(), ctx.space(), 0, m);
}

Mat randomInvertibleIntMatrix(int n, std::uint64_t seed, int bound) {
  if (n < 1 || bound < 1) throw ScenarioError("bad random matrix parameters");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  while (true) {
    Mat m = zeroMat(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Scalar(dist(rng));
    if (!exactDet(m).isZero()) return m;
  }
}

namespace {

using nlohmann::json;

int requireInt(const json& sc, const std::string& key, int lo, int hi) {
  if (!sc.contains(key) || !sc[key].is_number_integer())
    throw ScenarioError("missing or non-integer field: " + key);
  int v = sc[key].get<int>();
  if (v < lo || v > hi) throw ScenarioError("field out of range: " + key);
  return v;
}

Mat matrixFromJson(const json& rows, int n) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ScenarioError("F_L must be an n x n array of rational strings");
  Mat m = zeroMat(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ScenarioError("F_L must be an n x n array of rational strings");
    for (int j = 0; j < n; ++j) {
      const auto& cell = row[static_cast<size_t>(j)];
      if (!cell.is_string()) throw ScenarioError("F_L entries must be rational strings");
      m(i, j) = Scalar::parse(cell.get<std::string>());
    }
  }
  return m;
}

json serializeClifford(const CliffordElement& x) {
  std::vector<std::pair<std::vector<int>, std::string>> terms;
  for (const auto& [w, c] : x.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i)
      if (w & (Word{1} << i)) idx.push_back(i);
    terms.emplace_back(std::move(idx), c.str());
  }
  std::sort(terms.begin(), terms.end());
  json out = json::array();
  for (const auto& [idx, c] : terms) out.push_back(json::array({json(idx), json(c)}));
  return out;
}

void appendKolylfunRows(ScenarioReport& rep, const KolylfunReport& kr) {
  for (const auto& row : kr.rows)
    rep.rows.push_back({row.r, row.lhs.str(), row.rhs.str(), row.equal});
}

std::optional<Scalar> lambdaOverrideOf(const json& sc) {
  if (!sc.contains("lambda_override")) return std::nullopt;
  if (!sc["lambda_override"].is_string())
    throw ScenarioError("lambda_override must be a scalar string");
  return Scalar::parse(sc["lambda_override"].get<std::string>());
}

/// Builds the block-diagonal orthogonal F with the given eigenvalues on the
/// polarized pairs, optionally replacing the first pair by the reflection
/// block l_1 -> -l*_1, l*_1 -> -l_1 (determinant -1, one fixed vector).
SuperMap pinRouteF(const CliffordContext& ctx, const std::vector<Scalar>& alphas,
                   bool swapFirst) {
  const int n = ctx.n();
  if (static_cast<int>(alphas.size()) != n)
    throw ScenarioError("need exactly n eigenvalues");
  Mat m = zeroMat(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    if (alphas[static_cast<size_t>(i)].isZero())
      throw ScenarioError("eigenvalues must be nonzero");
    m(i, i) = alphas[static_cast<size_t>(i)];
    m(n + i, n + i) = alphas[static_cast<size_t>(i)].inverse();
  }
  if (swapFirst) {
    m(0, 0) = Scalar(0);
    m(n, n) = Scalar(0);
    m(n, 0) = Scalar(-1);
    m(0, n) = Scalar(-1);
  }
  return SuperMap(ctx.space(), ctx.space(), 0, m);
}

std::vector<Scalar> alphasFromJson(const json& sc, int n) {
  if (!sc.contains("alphas") || !sc["alphas"].is_array())
    throw ScenarioError("pin route needs an 'alphas' array of rational strings");
  std::vector<Scalar> alphas;
  for (const auto& a : sc["alphas"]) {
    if (!a.is_string()) throw ScenarioError("alphas entries must be rational strings");
    alphas.push_back(Scalar::parse(a.get<std::string>()));
  }
  if (static_cast<int>(alphas.size()) != n) throw ScenarioError("alphas must have length n");
  return alphas;
}

ScenarioReport runKolylfun(const json& sc) {
  ScenarioReport rep;
  rep.kind = "kolylfun";
  const int n = requireInt(sc, "n", 1, 6);
  const int rMax = requireInt(sc, "r_max", 0, 12);
  std::string route = sc.value("route", std::string("module"));
  rep.params["n"] = n;
  rep.params["r_max"] = rMax;
  rep.params["route"] = route;
  auto lambdaOverride = lambdaOverrideOf(sc);
  rep.params["lambda_supplied"] = lambdaOverride.has_value();
  if (lambdaOverride) rep.params["lambda_override"] = lambdaOverride->str();

  CliffordContext ctx(n);
  KolylfunReport kr;
  if (route == "module") {
    Mat fl;
    if (sc.contains("F_L")) {
      fl = matrixFromJson(sc["F_L"], n);
    } else if (sc.contains("random")) {
      const auto& rnd = sc["random"];
      const int bound = requireInt(rnd, "entry_bound", 1, 1000);
      if (!rnd.contains("seed") || !rnd["seed"].is_number_integer() || rnd["seed"].get<long long>() < 0)
        throw ScenarioError("random spec needs a non-negative seed");
      const std::uint64_t seed = rnd["seed"].get<std::uint64_t>();
      fl = randomInvertibleIntMatrix(n, seed, bound);
      rep.params["seed"] = seed;
      rep.params["entry_bound"] = bound;
    } else {
      throw ScenarioError("module route needs F_L or a random spec");
    }
    json flOut = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(fl(i, j).str());
      flOut.push_back(row);
    }
    rep.params["F_L"] = flOut;
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    auto mod = EquivariantModule::standard(ctx, f);
    kr = verifyKolylfun(mod, rMax, lambdaOverride);
    // Cross-check the closed-form central derivative against the symbolic
    // oracle for the requested q values.
    if (sc.contains("q_list")) {
      json qOut = json::array();
      for (const auto& qv : sc["q_list"]) {
        if (!qv.is_number_integer()) throw ScenarioError("q_list entries must be integers");
        Rational q(qv.get<int>());
        qOut.push_back(qv.get<int>());
        for (auto& row : kr.rows)
          if (centralDerivative(f, row.r) != centralDerivativeSymbolicOracle(f, row.r, q))
            row.equal = false;
      }
      rep.params["q_list"] = qOut;
    }
  } else if (route == "pin") {
    auto alphas = alphasFromJson(sc, n);
    const long long d = sc.value("d", 0LL);
    const bool swapFirst = sc.value("swap_first", false);
    rep.params["d"] = d;
    rep.params["swap_first"] = swapFirst;
    SuperMap f = pinRouteF(ctx, alphas, swapFirst);
    CliffordElement ft = pinLiftSemisimple(ctx, f, d);
    KolyvaginPolarization pol(ctx, f, ft);
    kr = verifyKolylfun(pol, rMax, lambdaOverride);
  } else {
    throw ScenarioError("route must be 'module' or 'pin'");
  }
  rep.params["lambda"] = kr.lambda.str();
  appendKolylfunRows(rep, kr);
  return rep;
}

ScenarioReport runKappa(const json& sc) {
  ScenarioReport rep;
  rep.kind = "kappa";
  const int n = requireInt(sc, "n", 2, 8);
  const bool fullBasis = sc.value("full_basis", false);
  rep.params["n"] = n;
  rep.params["full_basis"] = fullBasis;
  KappaReport kr = computeKappa(n, fullBasis);
  rep.params["witness_vw"] = kr.witnessVV;
  rep.params["witness_wv"] = kr.witnessWV;
  rep.params["witness_geo"] = kr.witnessGeo;
  if (fullBasis) {
    rep.params["basis_checked"] = kr.basisChecked;
    rep.params["basis_residuals"] = kr.residualNonzero;
  }
  Scalar expected((n % 2 == 1) ? 1 : -1);
  rep.rows.push_back({0, kr.kappa.str(), expected.str(), kr.pass});
  return rep;
}

ScenarioReport runPinLift(const json& sc) {
  ScenarioReport rep;
  rep.kind = "pin-lift";
  const int n = requireInt(sc, "n", 1, 6);
  const long long d = sc.value("d", 0LL);
  const bool swapFirst = sc.value("swap_first", false);
  rep.params["n"] = n;
  rep.params["d"] = d;
  rep.params["swap_first"] = swapFirst;
  CliffordContext ctx(n);
  SuperMap f = pinRouteF(ctx, alphasFromJson(sc, n), swapFirst);
  CliffordElement ft = pinLiftSemisimple(ctx, f, d);
  rep.params["lift"] = serializeClifford(ft);
  bool gpin = gpinCheck(ft);
  rep.rows.push_back({0, gpin ? "true" : "false", "true", gpin});
  bool reflects = gpin && isZeroMat(Mat(inducedOrthogonal(ft).mat - f.mat));
  rep.rows.push_back({1, reflects ? "true" : "false", "true", reflects});
  Scalar norm = spinorNorm(ft);
  rep.rows.push_back({2, norm.str(), Scalar(1).str(), norm == Scalar(1)});
  return rep;
}

/// Engineered orthogonal F with a prescribed fixed-space dimension k on a
/// (0|2n) space: floor(k/2) identity pairs, one reflection block when k is
/// odd, eigenvalue-4 pairs elsewhere (so the Pin lift stays rational).
SuperMap engineeredFixedDim(const CliffordContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || k > 2 * n) throw ScenarioError("fixed dimension out of range");
  const bool odd = (k % 2 == 1);
  const int ones = k / 2;
  if (ones + (odd ? 1 : 0) > n)
    throw ScenarioError("fixed dimension does not fit the chosen n");
  std::vector<Scalar> alphas(static_cast<size_t>(n), Scalar(4));
  for (int i = 0; i < ones; ++i)
    alphas[static_cast<size_t>(n - 1 - i)] = Scalar(1);
  return pinRouteF(ctx, alphas, odd);
}

ScenarioReport runSelmerOrder(const json& sc) {
  ScenarioReport rep;
  rep.kind = "selmer-order";
  const int n = requireInt(sc, "n", 1, 4);
  std::vector<int> dims;
  if (sc.contains("fixed_dims")) {
    for (const auto& v : sc["fixed_dims"]) {
      if (!v.is_number_integer()) throw ScenarioError("fixed_dims entries must be integers");
      dims.push_back(v.get<int>());
    }
  } else {
    dims.push_back(requireInt(sc, "fixed_dim", 0, 2 * n));
  }
  rep.params["n"] = n;
  rep.params["fixed_dims"] = dims;
  CliffordContext ctx(n);
  int idx = 0;
  for (int k : dims) {
    SuperMap f = engineeredFixedDim(ctx, k);
    CliffordElement ft = pinLiftSemisimple(ctx, f, 0);
    KolyvaginPolarization pol(ctx, f, ft);
    auto seq = sequenceFromPolarization(pol, 2 * n);
    auto ord = order(seq);
    const int expected = fixedSpaceDim(f);
    std::string lhs = ord ? std::to_string(*ord) : "none";
    rep.rows.push_back({idx++, lhs, std::to_string(expected), ord && *ord == expected});
  }
  return rep;
}

ScenarioReport runFuzz(const json& sc) {
  ScenarioReport rep;
  rep.kind = "conventions-fuzz";
  if (!sc.contains("seed") || !sc["seed"].is_number_integer() || sc["seed"].get<long long>() < 0)
    throw ScenarioError("fuzz needs a non-negative seed");
  const std::uint64_t seed = sc["seed"].get<std::uint64_t>();
  const int iters = requireInt(sc, "iters", 1, 10000);
  rep.params["seed"] = seed;
  rep.params["iters"] = iters;
  std::mt19937_64 rng(seed);
  const int rMax = 4;
  for (int it = 0; it < iters; ++it) {
    const int n = 1 + static_cast<int>(rng() % 3);
    Mat fl = randomInvertibleIntMatrix(n, rng(), 3);
    std::string failed;

    CliffordContext ctx(n);
    SuperMap f = orthogonalFromLBlock(ctx, fl);
    auto mod = EquivariantModule::standard(ctx, f);
    auto base = verifyKolylfun(mod, rMax);
    if (!base.pass) failed = "identity";

    if (failed.empty()) {
      // Parity flip negates every z_r and preserves the pairings.
      CliffordContext ctxFlip(n, -1);
      SuperMap fFlip = orthogonalFromLBlock(ctxFlip, fl);
      auto modFlip = EquivariantModule::standard(ctxFlip, fFlip);
      auto seq = sequenceFromModule(mod, rMax);
      auto seqFlip = sequenceFromModule(modFlip, rMax);
      for (int r = 0; r <= rMax && failed.empty(); ++r) {
        const auto& a = seq.entries[static_cast<size_t>(r)].entries;
        const auto& b = seqFlip.entries[static_cast<size_t>(r)].entries;
        for (size_t i = 0; i < a.size(); ++i)
          if (a[i] != -b[i]) {
            failed = "parity-flip";
            break;
          }
        if (failed.empty() &&
            omegaPairSelf(seq, r) != omegaPairSelf(seqFlip, r))
          failed = "parity-flip-pairing";
      }
    }

    if (failed.empty()) {
      // Scaling F_T by c = 2 multiplies lambda and every pairing by c^2.
      EquivariantModule scaled(ctx, mod.parities, mod.action, mod.F,
                               Mat(mod.FT * Scalar(2)), mod.grading);
      auto scaledRep = verifyKolylfun(scaled, rMax);
      if (!scaledRep.pass) failed = "scaling";
      for (size_t i = 0; i < base.rows.size() && failed.empty(); ++i)
        if (scaledRep.rows[i].lhs != base.rows[i].lhs * Scalar(4)) failed = "scaling-lhs";
    }

    rep.rows.push_back({it, failed.empty() ? "pass" : failed, "pass", failed.empty()});
  }
  return rep;
}

}  // namespace

ScenarioReport runScenario(const nlohmann::json& scenario) {
  if (!scenario.is_object() || !scenario.contains("kind") || !scenario["kind"].is_string())
    throw ScenarioError("scenario must be an object with a string 'kind'");
  const std::string kind = scenario["kind"].get<std::string>();
  if (kind == "kolylfun") return runKolylfun(scenario);
  if (kind == "kappa") return runKappa(scenario);
  if (kind == "pin-lift") return runPinLift(scenario);
  if (kind == "selmer-order") return runSelmerOrder(scenario);
  if (kind == "conventions-fuzz") return runFuzz(scenario);
  throw ScenarioError("unknown scenario kind: " + kind);
}

std::string emitReport(const ScenarioReport& rep, const std::string& format) {
  if (format == "json") {
    nlohmann::json out;
    out["scenario"] = rep.kind;
    out["params"] = rep.params;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
      nlohmann::json row;
      row["r"] = r.r;
      row["lhs"] = r.lhs;
      row["rhs"] = r.rhs;
      row["equal"] = r.equal;
      rows.push_back(row);
    }
    out["rows"] = rows;
    out["summary"] = {{"pass", rep.pass()}, {"failures", rep.failures()}};
    return out.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "r,lhs,rhs,equal\n";
    for (const auto& r : rep.rows)
      os << r.r << "," << r.lhs << "," << r.rhs << "," << (r.equal ? "true" : "false")
         << "\n";
    return os.str();
  }
  throw ScenarioError("format must be 'json' or 'csv'");
}

int runScenarioFile(const std::string& path, const std::string& format,
                    const std::string& outPath) {
  try {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open " << path << "\n";
      return 2;
    }
    nlohmann::json sc = nlohmann::json::parse(in);
    ScenarioReport rep = runScenario(sc);
    std::string bytes = emitReport(rep, format);
    if (outPath.empty()) {
      std::cout << bytes;
    } else {
      std::ofstream out(outPath, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << outPath << "\n";
        return 2;
      }
      out << bytes;
    }
    return rep.pass() ? 0 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed scenario: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace oddclif
