#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace solvagen::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Expected<double> parse_real(std::string_view text, const std::string& what) {
  const std::string s(trim(text));
  if (s.empty()) return make_error(ErrorCode::InvalidParameter, what + " is empty");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    return make_error(ErrorCode::InvalidParameter, what + " is not a finite number: '" + s + "'");
  }
  return v;
}

Expected<int> parse_int(std::string_view text, const std::string& what) {
  SOLVAGEN_TRY(v, parse_real(text, what));
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    return make_error(ErrorCode::InvalidParameter, what + " must be an integer, got '" + std::string(trim(text)) + "'");
  }
  return static_cast<int>(v);
}

Expected<bool> parse_bool(std::string_view text, const std::string& what) {
  const auto s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return make_error(ErrorCode::InvalidParameter, what + " must be true or false");
}

}  // namespace

int exit_code_for(ErrorCode code) { return code == ErrorCode::Io ? kExitIo : kExitInvalidInput; }

Expected<std::pair<std::string, double>> parse_param(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    return make_error(ErrorCode::InvalidParameter, "parameter must look like name=value, got '" + std::string(text) + "'");
  }
  const std::string name(trim(text.substr(0, eq)));
  if (name.empty()) return make_error(ErrorCode::InvalidParameter, "parameter name is empty");
  SOLVAGEN_TRY(v, parse_real(text.substr(eq + 1), "parameter " + name));
  return std::pair{name, v};
}

Expected<GridSpec> parse_grid(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (auto comma = text.find(','); ; comma = text.find(',', start)) {
    parts.emplace_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) return make_error(ErrorCode::InvalidParameter, "grid takes exactly rmin,rmax,N");
  SOLVAGEN_TRY(lo, parse_real(parts[0], "grid rmin"));
  SOLVAGEN_TRY(hi, parse_real(parts[1], "grid rmax"));
  SOLVAGEN_TRY(n, parse_int(parts[2], "grid N"));
  if (!(hi > lo)) return make_error(ErrorCode::InvalidParameter, "grid needs rmin < rmax");
  if (n < 100) return make_error(ErrorCode::InvalidParameter, "grid needs N >= 100");
  return GridSpec{lo, hi, n};
}

Expected<Format> parse_format(std::string_view text) {
  const auto s = trim(text);
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return make_error(ErrorCode::InvalidParameter, "format must be json or csv, got '" + std::string(s) + "'");
}

Expected<RunConfig> parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno);
    if (eq == std::string_view::npos) return make_error(ErrorCode::InvalidParameter, where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "dimension") {
      SOLVAGEN_TRY(v, parse_int(value, where));
      cfg.dimension = v;
    } else if (key == "ell") {
      SOLVAGEN_TRY(v, parse_int(value, where));
      cfg.ell = v;
    } else if (key == "n_max") {
      SOLVAGEN_TRY(v, parse_int(value, where));
      cfg.n_max = v;
    } else if (key == "tol") {
      SOLVAGEN_TRY(v, parse_real(value, where));
      cfg.tolerance = v;
    } else if (key == "format") {
      SOLVAGEN_TRY(v, parse_format(value));
      cfg.format = v;
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "grid") {
      SOLVAGEN_TRY(v, parse_grid(value));
      cfg.grid = v;
    } else if (key == "strict") {
      SOLVAGEN_TRY(v, parse_bool(value, where));
      cfg.strict = v;
    } else if (key == "jobs") {
      SOLVAGEN_TRY(v, parse_int(value, where));
      cfg.jobs = v;
    } else if (key.rfind("param.", 0) == 0 && key.size() > 6) {
      SOLVAGEN_TRY(v, parse_real(value, where));
      cfg.params[key.substr(6)] = v;
    } else {
      return make_error(ErrorCode::InvalidParameter, where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

Expected<RunConfig> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return make_error(ErrorCode::Io, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto cfg = parse_config_text(buf.str());
  if (!cfg) return make_error(cfg.error().code, path + ": " + cfg.error().message);
  return cfg;
}

RunConfig merge(const RunConfig& file, const RunConfig& flags) {
  RunConfig out = file;
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(out.dimension, flags.dimension);
  take(out.ell, flags.ell);
  take(out.n_max, flags.n_max);
  take(out.grid, flags.grid);
  take(out.tolerance, flags.tolerance);
  take(out.format, flags.format);
  take(out.output, flags.output);
  take(out.strict, flags.strict);
  take(out.jobs, flags.jobs);
  for (const auto& [k, v] : flags.params) out.params[k] = v;
  return out;
}

Expected<ResolvedConfig> resolve(const RunConfig& cfg) {
  ResolvedConfig r;
  if (cfg.dimension) r.dimension = *cfg.dimension;
  if (cfg.ell) r.ell = *cfg.ell;
  if (cfg.n_max) r.n_max = *cfg.n_max;
  r.params = cfg.params;
  r.grid = cfg.grid;
  if (cfg.tolerance) r.tolerance = *cfg.tolerance;
  if (cfg.format) r.format = *cfg.format;
  r.output = cfg.output;
  if (cfg.strict) r.strict = *cfg.strict;
  if (cfg.jobs) r.jobs = *cfg.jobs;

  if (r.dimension < 1) return make_error(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (r.ell < 0) return make_error(ErrorCode::InvalidParameter, "ell must be >= 0");
  if (r.n_max < 0) return make_error(ErrorCode::InvalidParameter, "n-max must be >= 0");
  if (!(r.tolerance > 0.0)) return make_error(ErrorCode::InvalidParameter, "tolerance must be > 0");
  if (r.jobs < 0) return make_error(ErrorCode::InvalidParameter, "jobs must be >= 0");
  return r;
}

}  // namespace solvagen::cli
