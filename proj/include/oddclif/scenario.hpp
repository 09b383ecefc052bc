#pragma once

#include <cstdint>

#include "json.hpp"
#include "oddclif/flagcoh.hpp"
#include "oddclif/kolyvagin.hpp"

namespace oddclif {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportRow {
  int r = 0;
  std::string lhs;
  std::string rhs;
  bool equal = false;
};

struct ScenarioReport {
  std::string kind;
  nlohmann::json params;
  std::vector<ReportRow> rows;

  int failures() const;
  bool pass() const { return failures() == 0; }
};

/// Orthogonal extension diag(A, A^{-T}) of an invertible L-block A to all of
/// M = L + L*.
SuperMap orthogonalFromLBlock(const CliffordContext& ctx, const Mat& fl);

/// Seeded random invertible integer matrix with entries in [-bound, bound].
Mat randomInvertibleIntMatrix(int n, std::uint64_t seed, int bound);

/// Dispatches a parsed scenario ({kind, ...}); throws ScenarioError on
/// schema/validation problems.
ScenarioReport runScenario(const nlohmann::json& scenario);

/// Deterministic report bytes; format is "json" or "csv".
std::string emitReport(const ScenarioReport& rep, const std::string& format);

/// Reads a scenario file, runs it, writes the report to outPath (or stdout if
/// empty). Returns 0 (all checks pass), 1 (an identity failed), or 2
/// (input/validation error, message on stderr).
int runScenarioFile(const std::string& path, const std::string& format,
                    const std::string& outPath);

}  // namespace oddclif
