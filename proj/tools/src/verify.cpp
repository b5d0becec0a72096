#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "solvagen/solver.hpp"

namespace solvagen::cli {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

namespace {

std::optional<solver::RadialGrid> user_grid(const ResolvedConfig& cfg) {
  if (!cfg.grid) return std::nullopt;
  auto g = solver::RadialGrid::make(cfg.grid->r_min, cfg.grid->r_max, cfg.grid->points);
  if (!g) return std::nullopt;  // parse_grid already rejected anything make() would
  return *g;
}

}  // namespace

StateRow verify_state(const catalog::QuantumSystem& sys, int index, int nodes_expected, double energy,
                      const ResolvedConfig& cfg) {
  StateRow row;
  row.index = index;
  row.nodes_expected = nodes_expected;
  row.E_analytic = energy;
  const auto grid = user_grid(cfg);
  const double tol = cfg.tolerance;

  auto solved = solver::solve_state(sys, index, grid);
  if (!solved) {
    row.error = solved.error().describe();
    return row;
  }
  row.nodes = solved->nodes;
  row.E_numeric = solved->E_numeric;
  row.rel_error = solved->rel_error;
  row.numerov_residual = solved->residual_max;

  auto res = solver::residual(sys, index, grid);
  if (res) {
    row.residual = *res;
  } else {
    row.error = res.error().describe();
  }

  if (!sys.potential_depends_on_state) {
    double worst = 0.0;
    for (int j = sys.first_index; j < index; ++j) {
      if (!sys.is_bound_fn || !sys.is_bound_fn(j)) continue;
      if (!sys.check_index(j)) continue;
      auto o = solver::orthogonality(sys, index, j, grid);
      if (!o) {
        row.error = o.error().describe();
        break;
      }
      worst = std::max(worst, *o);
    }
    row.orthogonality = worst;
  }

  row.pass = row.error.empty() && *row.rel_error < tol && row.residual && *row.residual < 10.0 * tol &&
             *row.nodes == nodes_expected && (!row.orthogonality || *row.orthogonality < 10.0 * tol);
  return row;
}

SystemReport verify_system(const catalog::QuantumSystem& sys, const ResolvedConfig& cfg) {
  SystemReport rep;
  rep.id = sys.id;
  rep.status = sys.status;
  rep.D = sys.D;
  rep.ell = sys.ell;

  const auto states = sys.states(cfg.n_max);
  if (states.empty()) rep.error = "no bound states with index <= " + std::to_string(cfg.n_max);
  bool all = rep.error.empty();
  for (const auto& s : states) {
    try {
      rep.states.push_back(verify_state(sys, s.index, s.nodes, s.energy, cfg));
    } catch (const std::exception& e) {
      StateRow row;
      row.index = s.index;
      row.nodes_expected = s.nodes;
      row.E_analytic = s.energy;
      row.error = e.what();
      rep.states.push_back(row);
    }
    all = all && rep.states.back().pass;
  }

  if (all) {
    rep.outcome = Outcome::Pass;
  } else if (sys.status != catalog::Status::Verified && !cfg.strict) {
    rep.outcome = Outcome::Skipped;
  } else {
    rep.outcome = Outcome::Fail;
  }
  return rep;
}

VerificationReport verify_all(const std::vector<catalog::QuantumSystem>& systems, const ResolvedConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport report;
  report.tolerance = cfg.tolerance;
  report.strict = cfg.strict;
  report.systems.resize(systems.size());

  unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(systems.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < systems.size(); i = next++) {
      try {
        report.systems[i] = verify_system(systems[i], cfg);
      } catch (const std::exception& e) {
        SystemReport rep;
        rep.id = systems[i].id;
        rep.status = systems[i].status;
        rep.error = e.what();
        rep.outcome = Outcome::Fail;
        report.systems[i] = std::move(rep);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (const auto& s : report.systems) {
    switch (s.outcome) {
      case Outcome::Pass: ++report.passed; break;
      case Outcome::Fail: ++report.failed; break;
      case Outcome::Skipped: ++report.skipped; break;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace solvagen::cli
