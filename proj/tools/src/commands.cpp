#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "solvagen/catalog.hpp"
#include "solvagen/expr.hpp"
#include "solvagen/solver.hpp"
#include "solvagen/transform.hpp"
#include "verify.hpp"

namespace solvagen::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Numbers go through %.12g so that output is stable across platforms.
Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt(v + 0.0).c_str(), nullptr);  // + 0.0 folds -0 into 0
}

template <typename T>
Json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return *v;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_num(double v) { return std::isfinite(v) ? fmt(v + 0.0) : ""; }

template <typename T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return csv_num(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CommandOutput failure(const Error& e) { return {exit_code_for(e.code), {}, e.describe()}; }

Json params_json(const std::map<std::string, double>& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = num(v);
  return j;
}

Expected<catalog::QuantumSystem> build_for(const std::string& id, const ResolvedConfig& cfg) {
  return catalog::build(id, cfg.dimension, cfg.ell, cfg.params);
}

std::string family_of(const catalog::QuantumSystem& sys, int index) {
  auto fam = sys.family(index);
  return fam ? polys::kind_name(fam->kind()) : "";
}

int representative_index(const catalog::QuantumSystem& sys, int n_max) {
  const auto states = sys.states(std::max(n_max, sys.first_index));
  return states.empty() ? sys.first_index : states.front().index;
}

Json states_json(const std::vector<catalog::State>& states) {
  Json arr = Json::array();
  for (const auto& s : states) arr.push_back({{"index", s.index}, {"nodes", s.nodes}, {"energy", num(s.energy)}});
  return arr;
}

}  // namespace

CommandOutput cmd_list(const ResolvedConfig& cfg) {
  Json systems = Json::array();
  std::ostringstream csv;
  csv << "id,family,status,uses_ell,params,constraints\n";
  for (const auto& entry : catalog::entries()) {
    // Metadata comes from the default-parameter build at the requested D.
    auto sys = catalog::build(entry.id, cfg.dimension, 0);
    Json params = Json::array();
    std::string param_text;
    for (const auto& p : entry.params) {
      params.push_back({{"name", p.name}, {"default", num(p.default_value)}, {"description", p.description}});
      if (!param_text.empty()) param_text += ';';
      param_text += p.name + "=" + fmt(p.default_value);
    }
    Json row = {{"id", entry.id}, {"summary", entry.summary}, {"uses_ell", entry.uses_ell}, {"params", params}};
    std::string family;
    std::string status;
    std::string constraint_text;
    if (sys) {
      family = family_of(*sys, representative_index(*sys, cfg.n_max));
      status = catalog::status_name(sys->status);
      for (const auto& c : sys->constraints) {
        if (!constraint_text.empty()) constraint_text += "; ";
        constraint_text += c;
      }
      row["title"] = sys->title;
      row["family"] = family;
      row["status"] = status;
      row["constraints"] = sys->constraints;
      row["alias_of"] = sys->alias_of.empty() ? Json(nullptr) : Json(sys->alias_of);
      row["variant_of"] = sys->variant_of.empty() ? Json(nullptr) : Json(sys->variant_of);
    } else {
      row["error"] = sys.error().describe();
    }
    systems.push_back(row);
    csv << csv_field(entry.id) << ',' << family << ',' << status << ',' << (entry.uses_ell ? "true" : "false") << ','
        << csv_field(param_text) << ',' << csv_field(constraint_text) << '\n';
  }
  if (cfg.format == Format::Csv) return {kExitOk, csv.str(), {}};
  Json doc = {{"command", "list"}, {"dimension", cfg.dimension}, {"systems", systems}};
  return {kExitOk, dump(doc), {}};
}

CommandOutput cmd_info(const std::string& id, const ResolvedConfig& cfg) {
  auto sys = build_for(id, cfg);
  if (!sys) return failure(sys.error());
  const int idx = representative_index(*sys, cfg.n_max);
  const auto states = sys->states(cfg.n_max);

  Json j = {{"id", sys->id}, {"title", sys->title}, {"source", sys->source},
            {"status", catalog::status_name(sys->status)}, {"D", sys->D}, {"ell", sys->ell},
            {"power_law", sys->power_law}, {"params", params_json(sys->params)}};
  j["family"] = family_of(*sys, idx);
  auto V = sys->table_potential(idx);
  j["potential"] = V ? Json(expr::to_string(expr::simplify(*V))) : Json(nullptr);
  j["potential_depends_on_state"] = sys->potential_depends_on_state;
  if (auto map = sys->mapping(idx)) {
    j["mapping"] = {{"g", expr::to_string(map->g)}, {"relation", transform::relation_name(map->relation)},
                    {"c", num(map->c)}};
  } else {
    j["mapping"] = nullptr;
  }
  auto psi = sys->psi(idx);
  j["psi_first_state"] = psi ? Json(expr::to_string(*psi)) : Json(nullptr);
  j["constraints"] = sys->constraints;
  j["notes"] = sys->notes;
  j["alias_of"] = sys->alias_of.empty() ? Json(nullptr) : Json(sys->alias_of);
  j["variant_of"] = sys->variant_of.empty() ? Json(nullptr) : Json(sys->variant_of);
  j["states"] = states_json(states);

  if (cfg.format == Format::Csv) {
    std::ostringstream csv;
    csv << "field,value\n";
    for (const auto& [k, v] : j.items()) {
      if (k == "states") continue;
      csv << k << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    return {kExitOk, csv.str(), {}};
  }
  return {kExitOk, dump({{"command", "info"}, {"system", j}}), {}};
}

CommandOutput cmd_energies(const std::string& id, const ResolvedConfig& cfg) {
  auto sys = build_for(id, cfg);
  if (!sys) return failure(sys.error());

  // Every admissible index up to n_max, including E = 0 thresholds; indices
  // the constraints exclude are listed with the reason.
  Json states = Json::array();
  Json excluded = Json::array();
  std::ostringstream csv;
  csv << "index,nodes,energy,bound\n";
  for (int i = sys->first_index; i <= cfg.n_max; ++i) {
    if (i > sys->last_index) {
      excluded.push_back({{"index", i}, {"reason", "the constraints admit no index above " +
                                                       std::to_string(sys->last_index)}});
      break;
    }
    auto nodes = sys->check_index(i);
    if (!nodes) {
      excluded.push_back({{"index", i}, {"reason", nodes.error().message}});
      continue;
    }
    const double E = sys->energy_fn(i);
    const bool bound = sys->is_bound_fn(i);
    states.push_back({{"index", i}, {"nodes", *nodes}, {"energy", num(E)}, {"bound", bound}});
    csv << i << ',' << *nodes << ',' << csv_num(E) << ',' << (bound ? "true" : "false") << '\n';
  }
  if (cfg.format == Format::Csv) return {kExitOk, csv.str(), {}};
  Json doc = {{"command", "energies"}, {"system", sys->id}, {"D", sys->D},          {"ell", sys->ell},
              {"params", params_json(sys->params)}, {"n_max", cfg.n_max},   {"states", states},
              {"excluded", excluded}};
  return {kExitOk, dump(doc), {}};
}

CommandOutput cmd_sample(const std::string& id, const ResolvedConfig& cfg) {
  auto sys = build_for(id, cfg);
  if (!sys) return failure(sys.error());
  const auto states = sys->states(cfg.n_max);
  if (states.empty()) {
    return failure(make_error(ErrorCode::NoBoundState, id + " has no bound states with index <= " +
                                                           std::to_string(cfg.n_max)));
  }
  const int first = states.front().index;

  double lo;
  double hi;
  int points = 201;
  if (cfg.grid) {
    lo = cfg.grid->r_min;
    hi = cfg.grid->r_max;
    points = cfg.grid->points;
  } else {
    auto dom = sys->domain(first);
    if (!dom) return failure(dom.error());
    lo = dom->lo;
    hi = dom->hi;
  }

  auto V = sys->table_potential(first);
  if (!V) return failure(V.error());
  std::vector<expr::Expr> psis;
  std::vector<double> scale;
  for (const auto& s : states) {
    auto psi = sys->psi(s.index);
    if (!psi) return failure(psi.error());
    auto n2 = solver::norm_squared(*sys, s.index);
    if (!n2) return failure(n2.error());
    psis.push_back(*psi);
    scale.push_back(*n2 > 0.0 ? 1.0 / std::sqrt(*n2) : 1.0);
  }

  auto value = [](const expr::Expr& e, double r) {
    auto v = expr::eval(e, "r", r);
    return v ? *v : std::nan("");
  };

  Json columns = {"r", "V"};
  std::ostringstream csv;
  csv << "r,V";
  for (const auto& s : states) {
    columns.push_back("psi_" + std::to_string(s.index));
    csv << ",psi_" << s.index;
  }
  csv << '\n';

  Json rows = Json::array();
  for (int i = 0; i < points; ++i) {
    const double r = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
    Json row = {num(r), num(value(*V, r))};
    csv << csv_num(r) << ',' << csv_num(value(*V, r));
    for (std::size_t k = 0; k < psis.size(); ++k) {
      const double p = value(psis[k], r) * scale[k];
      row.push_back(num(p));
      csv << ',' << csv_num(p);
    }
    csv << '\n';
    rows.push_back(row);
  }
  if (cfg.format == Format::Csv) return {kExitOk, csv.str(), {}};
  Json doc = {{"command", "sample"}, {"system", sys->id}, {"D", sys->D}, {"ell", sys->ell},
              {"params", params_json(sys->params)}, {"columns", columns}, {"rows", rows}};
  return {kExitOk, dump(doc), {}};
}

namespace {

Json report_json(const VerificationReport& rep, const ResolvedConfig& cfg) {
  Json systems = Json::array();
  for (const auto& s : rep.systems) {
    Json states = Json::array();
    for (const auto& row : s.states) {
      states.push_back({{"index", row.index},
                        {"nodes_expected", row.nodes_expected},
                        {"nodes", opt(row.nodes)},
                        {"E_analytic", num(row.E_analytic)},
                        {"E_numeric", opt(row.E_numeric)},
                        {"rel_error", opt(row.rel_error)},
                        {"residual", opt(row.residual)},
                        {"numerov_residual", opt(row.numerov_residual)},
                        {"orthogonality", opt(row.orthogonality)},
                        {"error", row.error.empty() ? Json(nullptr) : Json(row.error)},
                        {"pass", row.pass}});
    }
    systems.push_back({{"id", s.id},
                       {"status", catalog::status_name(s.status)},
                       {"D", s.D},
                       {"ell", s.ell},
                       {"outcome", outcome_name(s.outcome)},
                       {"error", s.error.empty() ? Json(nullptr) : Json(s.error)},
                       {"states", states}});
  }
  return {{"command", "verify"},
          {"tolerance", num(rep.tolerance)},
          {"n_max", cfg.n_max},
          {"strict", rep.strict},
          {"systems", systems},
          {"summary", {{"pass", rep.passed}, {"fail", rep.failed}, {"skipped", rep.skipped}}}};
}

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream csv;
  csv << "id,status,outcome,D,ell,index,nodes_expected,nodes,E_analytic,E_numeric,rel_error,residual,"
         "numerov_residual,orthogonality,pass,error\n";
  for (const auto& s : rep.systems) {
    const std::string head = csv_field(s.id) + ',' + catalog::status_name(s.status) + ',' + outcome_name(s.outcome) +
                             ',' + std::to_string(s.D) + ',' + std::to_string(s.ell) + ',';
    if (s.states.empty()) csv << head << ",,,,,,,,,false," << csv_field(s.error) << '\n';
    for (const auto& row : s.states) {
      csv << head << row.index << ',' << row.nodes_expected << ',' << csv_opt(row.nodes) << ','
          << csv_num(row.E_analytic) << ',' << csv_opt(row.E_numeric) << ',' << csv_opt(row.rel_error) << ','
          << csv_opt(row.residual) << ',' << csv_opt(row.numerov_residual) << ',' << csv_opt(row.orthogonality)
          << ',' << (row.pass ? "true" : "false") << ',' << csv_field(row.error) << '\n';
    }
  }
  return csv.str();
}

}  // namespace

CommandOutput cmd_verify(const std::optional<std::string>& id, const ResolvedConfig& cfg) {
  std::vector<catalog::QuantumSystem> systems;
  if (id) {
    auto sys = build_for(*id, cfg);
    if (!sys) return failure(sys.error());
    systems.push_back(std::move(*sys));
  } else {
    for (const auto& entry : catalog::entries()) {
      std::map<std::string, double> params;
      for (const auto& p : entry.params) {
        if (auto it = cfg.params.find(p.name); it != cfg.params.end()) params[p.name] = it->second;
      }
      auto sys = catalog::build(entry.id, cfg.dimension, entry.uses_ell ? cfg.ell : 0, params);
      if (!sys) return failure(make_error(sys.error().code, entry.id + ": " + sys.error().message));
      systems.push_back(std::move(*sys));
    }
  }

  const auto report = verify_all(systems, cfg);
  CommandOutput out;
  out.code = report.ok() ? kExitOk : kExitVerificationFailed;
  out.body = cfg.format == Format::Csv ? report_csv(report) : dump(report_json(report, cfg));
  // Wall time stays out of the document so that reruns are byte-identical.
  char buf[160];
  std::snprintf(buf, sizeof buf, "verify: %d pass, %d fail, %d skipped in %.2f s", report.passed, report.failed,
                report.skipped, report.wall_seconds);
  out.message = buf;
  return out;
}

namespace {

struct Derivs {
  double d1, d2, d3;
};

// 5-point stencils at step h: O(h^4) for the first two derivatives, O(h^2)
// for the third.
std::optional<Derivs> stencil(const expr::Expr& g, double r, double h) {
  double f[5];
  for (int k = -2; k <= 2; ++k) {
    auto v = expr::eval(g, "r", r + k * h);
    if (!v) return std::nullopt;
    f[k + 2] = *v;
  }
  return Derivs{(f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h),
                (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h),
                (-f[0] + 2 * f[1] - 2 * f[3] + f[4]) / (2 * h * h * h)};
}

}  // namespace

CommandOutput cmd_schwartzian_check(const std::string& text, const ResolvedConfig& cfg, double tolerance) {
  expr::ParseOptions po;
  po.allowed_variables = std::vector<std::string>{"r"};
  auto g = expr::parse(text, po);
  if (!g) return failure(g.error());
  auto S = transform::schwartzian(*g, "r");
  if (!S) return failure(S.error());

  double lo = 0.1;
  double hi = 2.0;
  int points = 50;
  if (cfg.grid) {
    lo = cfg.grid->r_min;
    hi = cfg.grid->r_max;
    points = cfg.grid->points;
  }

  // Two Richardson levels over h, h/2, h/4: a single level at 1e-2 leaves
  // errors of a few 1e-6 on strongly curved maps such as 1/(r + 0.5).
  const double h = 2e-2;
  Json samples = Json::array();
  std::ostringstream csv;
  csv << "r,symbolic,finite_difference,deviation\n";
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < points; ++i) {
    const double r = lo + (hi - lo) * i / (points - 1);
    auto sym = expr::eval(*S, "r", r);
    auto a = stencil(*g, r, h);
    auto b = stencil(*g, r, h / 2);
    auto c = stencil(*g, r, h / 4);
    if (!sym || !a || !b || !c) continue;
    auto level = [](double coarse, double fine, double w) { return (w * fine - coarse) / (w - 1); };
    const double d1 = level(level(a->d1, b->d1, 16), level(b->d1, c->d1, 16), 64);
    const double d2 = level(level(a->d2, b->d2, 16), level(b->d2, c->d2, 16), 64);
    const double d3 = level(level(a->d3, b->d3, 4), level(b->d3, c->d3, 4), 16);
    if (std::abs(d1) < 1e-8) continue;  // g' vanishes: the Schwartzian is singular here
    const double q = d2 / d1;
    const double fd = d3 / d1 - 1.5 * q * q;
    const double dev = std::abs(*sym - fd) / std::max(1.0, std::abs(*sym));
    worst = std::max(worst, dev);
    ++used;
    samples.push_back({{"r", num(r)}, {"symbolic", num(*sym)}, {"finite_difference", num(fd)}, {"deviation", num(dev)}});
    csv << csv_num(r) << ',' << csv_num(*sym) << ',' << csv_num(fd) << ',' << csv_num(dev) << '\n';
  }
  if (used == 0) {
    return failure(make_error(ErrorCode::Domain, "g(r) = " + text + " cannot be sampled on [" + fmt(lo) + ", " +
                                                     fmt(hi) + "]"));
  }

  const bool pass = worst < tolerance;
  CommandOutput out;
  out.code = pass ? kExitOk : kExitVerificationFailed;
  char buf[128];
  std::snprintf(buf, sizeof buf, "schwartzian-check: max deviation %.3g at %d points (%s)", worst, used,
                pass ? "pass" : "fail");
  out.message = buf;
  if (cfg.format == Format::Csv) {
    out.body = csv.str();
  } else {
    out.body = dump({{"command", "schwartzian-check"},
                     {"g", expr::to_string(*g)},
                     {"schwartzian", expr::to_string(*S)},
                     {"points", used},
                     {"max_deviation", num(worst)},
                     {"tolerance", num(tolerance)},
                     {"pass", pass},
                     {"samples", samples}});
  }
  return out;
}

}  // namespace solvagen::cli
