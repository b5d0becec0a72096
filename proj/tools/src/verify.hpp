#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "solvagen/catalog.hpp"

namespace solvagen::cli {

struct StateRow {
  int index = 0;
  int nodes_expected = 0;
  std::optional<int> nodes;
  double E_analytic = 0.0;
  std::optional<double> E_numeric;
  std::optional<double> rel_error;
  std::optional<double> residual;          // closed-form Schrodinger residual
  std::optional<double> numerov_residual;  // solver's own, at the matching point
  std::optional<double> orthogonality;     // worst overlap with lower states
  std::string error;
  bool pass = false;
};

enum class Outcome { Pass, Fail, Skipped };
const char* outcome_name(Outcome o);

struct SystemReport {
  std::string id;
  catalog::Status status = catalog::Status::Verified;
  int D = 3;
  int ell = 0;
  std::vector<StateRow> states;
  std::string error;  // system-level failure (no states could be listed)
  Outcome outcome = Outcome::Pass;
};

struct VerificationReport {
  double tolerance = 1e-5;
  bool strict = false;
  std::vector<SystemReport> systems;
  int passed = 0;
  int failed = 0;
  int skipped = 0;  // failing systems that are not Verified, unless strict
  double wall_seconds = 0.0;

  bool ok() const { return failed == 0; }
};

// Row passes iff rel_error < tol, residual < 10 tol, nodes match and the
// overlap with lower states (when defined) is < 10 tol.
StateRow verify_state(const catalog::QuantumSystem& sys, int index, int nodes_expected, double energy,
                      const ResolvedConfig& cfg);

SystemReport verify_system(const catalog::QuantumSystem& sys, const ResolvedConfig& cfg);

// Runs the systems on a bounded worker pool; the report keeps input order.
VerificationReport verify_all(const std::vector<catalog::QuantumSystem>& systems, const ResolvedConfig& cfg);

}  // namespace solvagen::cli
