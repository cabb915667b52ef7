#include "rhd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "rhd/errors.hpp"

namespace rhd {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "': " + std::string(why));
}

double parse_real(std::string_view key, std::string_view text) {
  const auto s = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) bad_value(key, text, "expected a number");
  if (!std::isfinite(v)) bad_value(key, text, "must be finite");
  return v;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view text) {
  const auto s = trim(text);
  Int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) bad_value(key, text, "expected an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  std::string s(trim(text));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  // a bare flag (`--emit-cuts`) arrives as an empty value
  if (s.empty() || s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, text, "expected true/false");
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find_first_of(", \t", pos);
    const auto piece = trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  std::replace(f.begin(), f.end(), '_', '-');
  return f;
}

const char* key_help(const std::string& key) {
  static const std::map<std::string, const char*> help = {
      {"problem", "sine, vortex, explosion, rp1, rp2, jet_hot_{1,2,3}, jet_cold_{1,2,3} (jet = jet_hot_1)"},
      {"n", "cells per direction (sets nx and ny)"},
      {"nx", "cells along x"},
      {"ny", "cells along y"},
      {"cfl", "CFL number sigma, 0 < sigma <= 1 (admissibility proven for sigma <= 1/2)"},
      {"alpha", "wave speed amplifier of the vertex solver, >= 1"},
      {"mode", "multidimensional | dimension_split"},
      {"dt_rule", "signal (dt also divided by alpha) | eigenvalue"},
      {"init", "average (cell averages of the conserved variables) | centre"},
      {"t_end", "final time (default: the problem's)"},
      {"snapshots", "comma separated output times before t_end"},
      {"max_steps", "stop after this many steps (-1: no limit)"},
      {"pcp_audit", "check admissibility of every updated cell"},
      {"kernels", "auto | scalar | avx2"},
      {"output_dir", "directory for data files"},
      {"emit_field", "write the full field"},
      {"emit_cuts", "write density cuts along x = centre and y = x"},
      {"emit_report", "write the key = value report"},
      {"emit_schlieren", "write ln rho, ln p and |grad rho|"},
      {"n_list", "converge: comma separated grid sizes"},
      {"samples", "verify: draws per suite"},
      {"seed", "verify: random seed"},
      {"suites", "verify: comma separated subset of the suites"},
  };
  const auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

}  // namespace

SolverConfig RunConfig::solver_config() const {
  SolverConfig s;
  s.cfl_sigma = cfl;
  s.alpha = alpha;
  s.mode = mode;
  s.dt_rule = dt_rule;
  s.pcp_audit = pcp_audit;
  return s;
}

int default_nx(const ProblemSpec& spec) { return spec.jet ? 60 : 100; }

int default_ny(const ProblemSpec& spec) {
  if (!spec.jet) return 100;
  return static_cast<int>(std::lround(60.0 * (spec.y_max - spec.y_min) / (spec.x_max - spec.x_min)));
}

int RunConfig::grid_nx(const ProblemSpec& spec) const { return nx.value_or(default_nx(spec)); }
int RunConfig::grid_ny(const ProblemSpec& spec) const { return ny.value_or(default_ny(spec)); }
double RunConfig::end_time(const ProblemSpec& spec) const { return t_end.value_or(spec.t_end); }


std::vector<int> RunConfig::series(const ProblemSpec& spec) const {
  if (!n_list.empty()) return n_list;
  if (spec.name == "vortex") return {20, 40, 80};
  return {20, 40, 80, 160};
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands = {"run", "converge", "verify", "compare-symmetry"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  const ProblemSpec spec = make_problem(problem);
  if (nx && *nx < 1) throw ConfigError("'nx' must be at least 1");
  if (ny && *ny < 1) throw ConfigError("'ny' must be at least 1");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("'cfl' must satisfy 0 < sigma <= 1");
  if (!(alpha >= 1.0)) throw ConfigError("'alpha' must be at least 1");
  solver_config().validate();
  const double te = end_time(spec);
  if (!(te > 0.0)) throw ConfigError("'t_end' must be positive");
  for (double t : snapshots) {
    if (!(t > 0.0 && t <= te)) throw ConfigError("'snapshots' entries must lie in (0, t_end]");
  }
  if (max_steps < -1) throw ConfigError("'max_steps' must be -1 or non-negative");
  if (kernels != "auto" && kernels != "scalar" && kernels != "avx2") {
    throw ConfigError("'kernels' must be auto, scalar or avx2");
  }
  for (int n : n_list) {
    if (n < 1) throw ConfigError("'n_list' entries must be at least 1");
  }
  if (samples < 1) throw ConfigError("'samples' must be at least 1");
  const auto& names = verify_suite_names();
  for (const auto& s : suites) {
    if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("unknown suite '" + s + "'");
  }
  if (command == "converge" && !spec.exact) {
    throw ConfigError("problem '" + problem + "' has no exact solution to converge against");
  }
  if (command == "converge" && series(spec).size() < 2) throw ConfigError("'n_list' needs at least two grids");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "problem",    "n",          "nx",         "ny",        "cfl",          "alpha",     "mode",
      "dt_rule",    "init",       "t_end",      "snapshots",  "max_steps",  "pcp_audit", "kernels",      "output_dir", "emit_field",
      "emit_cuts",  "emit_report", "emit_schlieren", "n_list", "samples",    "seed",      "suites"};
  return keys;
}

std::vector<std::string> command_keys(std::string_view command) {
  if (command == "run") {
    return {"problem",   "n",         "nx",      "ny",         "cfl",        "alpha",     "mode",
            "dt_rule",   "init",      "t_end",     "snapshots", "max_steps", "pcp_audit", "kernels",   "output_dir", "emit_field",
            "emit_cuts", "emit_report", "emit_schlieren"};
  }
  if (command == "converge") {
    return {"problem", "n_list", "cfl", "alpha", "mode", "dt_rule", "init", "t_end", "pcp_audit", "kernels", "output_dir", "emit_report"};
  }
  if (command == "verify") return {"samples", "seed", "suites", "output_dir", "emit_report"};
  if (command == "compare-symmetry") {
    return {"n", "cfl", "alpha", "dt_rule", "init", "t_end", "pcp_audit", "kernels", "output_dir", "emit_cuts", "emit_report"};
  }
  return {};
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"convexity", "scaling", "combination", "closure",
                                                 "sanity",    "vertex",  "hterms",      "roundtrip"};
  return names;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k(trim(key));
  const std::string_view v = trim(value);
  if (k == "problem") {
    cfg.problem = std::string(v);
  } else if (k == "n") {
    cfg.nx = cfg.ny = parse_int<int>(k, v);
  } else if (k == "nx") {
    cfg.nx = parse_int<int>(k, v);
  } else if (k == "ny") {
    cfg.ny = parse_int<int>(k, v);
  } else if (k == "cfl") {
    cfg.cfl = parse_real(k, v);
  } else if (k == "alpha") {
    cfg.alpha = parse_real(k, v);
  } else if (k == "mode") {
    try {
      cfg.mode = parse_mode(v);
    } catch (const ConfigError& e) {
      bad_value(k, v, e.what());
    }
  } else if (k == "dt_rule") {
    try {
      cfg.dt_rule = parse_dt_rule(v);
    } catch (const ConfigError& e) {
      bad_value(k, v, e.what());
    }
  } else if (k == "init") {
    try {
      cfg.init = parse_init_sampling(v);
    } catch (const ConfigError& e) {
      bad_value(k, v, e.what());
    }
  } else if (k == "t_end") {
    cfg.t_end = parse_real(k, v);
  } else if (k == "snapshots") {
    cfg.snapshots.clear();
    for (auto piece : split_list(v)) cfg.snapshots.push_back(parse_real(k, piece));
  } else if (k == "max_steps") {
    cfg.max_steps = parse_int<std::int64_t>(k, v);
  } else if (k == "pcp_audit") {
    cfg.pcp_audit = parse_bool(k, v);
  } else if (k == "kernels") {
    cfg.kernels = std::string(v);
  } else if (k == "output_dir") {
    if (v.empty()) bad_value(k, v, "must not be empty");
    cfg.output_dir = std::string(v);
  } else if (k == "emit_field") {
    cfg.emit_field = parse_bool(k, v);
  } else if (k == "emit_cuts") {
    cfg.emit_cuts = parse_bool(k, v);
  } else if (k == "emit_report") {
    cfg.emit_report = parse_bool(k, v);
  } else if (k == "emit_schlieren") {
    cfg.emit_schlieren = parse_bool(k, v);
  } else if (k == "n_list") {
    cfg.n_list.clear();
    for (auto piece : split_list(v)) cfg.n_list.push_back(parse_int<int>(k, piece));
  } else if (k == "samples") {
    cfg.samples = parse_int<std::int64_t>(k, v);
  } else if (k == "seed") {
    cfg.seed = parse_int<std::uint64_t>(k, v);
  } else if (k == "suites") {
    cfg.suites.clear();
    for (auto piece : split_list(v)) cfg.suites.emplace_back(piece);
  } else {
    throw ConfigError("unknown key '" + k + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto key = trim(l.substr(0, eq));
    if (key.empty()) throw ConfigError(where + "missing key");
    try {
      apply_setting(cfg, key, l.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

Invocation parse_config(int argc, const char* const* argv) {
  CLI::App app{"Two-dimensional special relativistic hydrodynamics with a PCP multidimensional HLL scheme"};
  app.name("rhd");
  app.require_subcommand(1);

  const std::pair<const char*, const char*> commands[] = {
      {"run", "run one simulation and write its data files"},
      {"converge", "grid doubling series against the exact solution, with error norms and orders"},
      {"verify", "randomised property suites for the admissible set, the vertex solver and recovery"},
      {"compare-symmetry", "explosion problem in both solver modes; ratio of the radial symmetry deviations"},
  };
  std::map<std::string, std::string> values;
  std::string config_path;
  std::vector<std::pair<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>>> subs;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "flat key = value file; flags override it");
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    for (const auto& key : command_keys(name)) {
      CLI::Option* o = sub->add_option(flag_name(key), values[key], key_help(key));
      if (key.rfind("emit_", 0) == 0 || key == "pcp_audit") o->expected(0, 1)->type_name("BOOL");
      opts.emplace_back(key, o);
    }
    subs.emplace_back(sub, std::move(opts));
  }

  Invocation inv;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    inv.help = app.help();
    for (const auto& [sub, opts] : subs) {
      if (sub->parsed()) inv.help = sub->help();
    }
    return inv;
  } catch (const CLI::CallForAllHelp&) {
    inv.help = app.help("", CLI::AppFormatMode::All);
    return inv;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  for (const auto& [sub, opts] : subs) {
    if (!sub->parsed()) continue;
    inv.config.command = sub->get_name();
    if (!config_path.empty()) apply_config_file(inv.config, config_path);
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) apply_setting(inv.config, key, values[key]);
    }
  }
  inv.config.validate();
  return inv;
}

}  // namespace rhd
