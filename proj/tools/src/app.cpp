#include "app.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace solvagen::cli {

namespace {

struct FlagValues {
  int dimension = 0;
  int ell = 0;
  int n_max = 0;
  std::vector<std::string> params;
  std::string grid;
  double tolerance = 0.0;
  std::string format;
  std::string output;
  bool strict = false;
  int jobs = 0;
};

// Only flags that were actually given make it into the RunConfig, so the
// config file can supply the rest.
Expected<RunConfig> flags_to_config(const CLI::App& app, const FlagValues& f) {
  RunConfig cfg;
  auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (given("--dimension")) cfg.dimension = f.dimension;
  if (given("--ell")) cfg.ell = f.ell;
  if (given("--n-max")) cfg.n_max = f.n_max;
  for (const auto& p : f.params) {
    SOLVAGEN_TRY(kv, parse_param(p));
    cfg.params[kv.first] = kv.second;
  }
  if (given("--grid")) {
    SOLVAGEN_TRY(g, parse_grid(f.grid));
    cfg.grid = g;
  }
  if (given("--tol")) cfg.tolerance = f.tolerance;
  if (given("--format")) {
    SOLVAGEN_TRY(fmt, parse_format(f.format));
    cfg.format = fmt;
  }
  if (given("--output")) cfg.output = f.output;
  if (given("--strict")) cfg.strict = f.strict;
  if (given("--jobs")) cfg.jobs = f.jobs;
  return cfg;
}

int emit(const CommandOutput& result, const ResolvedConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!result.message.empty()) err << result.message << '\n';
  if (result.body.empty()) return result.code;
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file || !(file << result.body) || !file.flush()) {
      err << make_error(ErrorCode::Io, "cannot write '" + *cfg.output + "'").describe() << '\n';
      return kExitIo;
    }
  } else {
    out << result.body;
  }
  return result.code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exactly solvable radial potentials from orthogonal polynomials, with numerical verification",
               "solvagen"};
  app.require_subcommand(1);

  FlagValues f;
  app.add_option("--dimension", f.dimension, "spatial dimension D (default 3)");
  app.add_option("--ell", f.ell, "angular momentum l (default 0)");
  app.add_option("--n-max", f.n_max, "highest state index (default 4)");
  app.add_option("--param", f.params, "parameter override name=value (repeatable)");
  app.add_option("--grid", f.grid, "rmin,rmax,N (write --grid=-1,1,400 for a negative rmin)");
  app.add_option("--tol", f.tolerance, "verification tolerance (default 1e-5; 1e-6 for schwartzian-check)");
  app.add_option("--format", f.format, "json or csv (default json)");
  app.add_option("--output", f.output, "write the document to this path instead of stdout");
  app.add_flag("--strict", f.strict, "count failing ambiguous systems as failures");
  app.add_option("--jobs", f.jobs, "worker threads for verify --all (default: all cores)");

  std::string id;
  std::string g_text;
  bool all = false;

  auto* list = app.add_subcommand("list", "list the catalog");
  auto* info = app.add_subcommand("info", "describe one system");
  info->add_option("system", id, "system id")->required();
  auto* energies = app.add_subcommand("energies", "closed-form energies up to --n-max");
  energies->add_option("system", id, "system id")->required();
  auto* sample = app.add_subcommand("sample", "sample V and normalized psi on a grid");
  sample->add_option("system", id, "system id")->required();
  auto* verify = app.add_subcommand("verify", "check closed forms against the numerical eigensolver");
  auto* verify_id = verify->add_option("system", id, "system id");
  auto* verify_all_flag = verify->add_flag("--all", all, "verify every catalog system");
  verify_id->excludes(verify_all_flag);
  auto* schwarz = app.add_subcommand("schwartzian-check", "symbolic Schwartzian of g(r) against finite differences");
  schwarz->add_option("g", g_text, "expression in r")->required();
  for (auto* sub : {list, info, energies, sample, verify, schwarz}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  if (verify->parsed() && !all && id.empty()) {
    err << make_error(ErrorCode::InvalidParameter, "verify needs a system id or --all").describe() << '\n';
    return kExitInvalidInput;
  }

  RunConfig file_cfg;
  if (const char* path = std::getenv("SOLVAGEN_CONFIG"); path != nullptr && *path != '\0') {
    auto loaded = load_config_file(path);
    if (!loaded) {
      err << loaded.error().describe() << '\n';
      return exit_code_for(loaded.error().code);
    }
    file_cfg = *loaded;
  }
  auto flag_cfg = flags_to_config(app, f);
  if (!flag_cfg) {
    err << flag_cfg.error().describe() << '\n';
    return exit_code_for(flag_cfg.error().code);
  }
  const RunConfig merged = merge(file_cfg, *flag_cfg);
  auto cfg = resolve(merged);
  if (!cfg) {
    err << cfg.error().describe() << '\n';
    return exit_code_for(cfg.error().code);
  }

  CommandOutput result;
  if (list->parsed()) {
    result = cmd_list(*cfg);
  } else if (info->parsed()) {
    result = cmd_info(id, *cfg);
  } else if (energies->parsed()) {
    result = cmd_energies(id, *cfg);
  } else if (sample->parsed()) {
    result = cmd_sample(id, *cfg);
  } else if (verify->parsed()) {
    result = cmd_verify(all ? std::nullopt : std::optional<std::string>(id), *cfg);
  } else {
    result = cmd_schwartzian_check(g_text, *cfg, merged.tolerance.value_or(1e-6));
  }
  return emit(result, *cfg, out, err);
}

}  // namespace solvagen::cli
