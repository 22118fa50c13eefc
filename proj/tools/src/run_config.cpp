#include "run_config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "tetlab/errors.hpp"

namespace tetlab::cli {

namespace {

std::string key_help(const std::string& k) {
  static const std::map<std::string, std::string> help = {
      {"sigma0", "initial packet width"},
      {"q0bar", "initial packet centre"},
      {"p0bar", "initial mean momentum"},
      {"mass", "particle mass"},
      {"hbar", "reduced Planck constant"},
      {"g", "gravitational acceleration"},
      {"xd", "screen distance"},
      {"ys", "slit half-separation"},
      {"p0x", "longitudinal momentum"},
      {"p0y", "transverse momentum of each slit branch"},
      {"samples", "Monte Carlo sample count"},
      {"seed", "Monte Carlo seed"},
      {"bins", "histogram bins"},
      {"grid_n", "abscissa grid points"},
      {"t_max", "end of the time window"},
      {"y_halfwidth", "screen half-width"},
  };
  return help.at(k);
}

const std::vector<std::string>& all_keys() {
  static const std::vector<std::string> keys = {"sigma0", "q0bar", "p0bar",   "mass", "hbar", "g",
                                                "xd",     "ys",    "p0x",     "p0y",  "samples",
                                                "seed",   "bins",  "grid_n", "t_max", "y_halfwidth"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentKind RunConfig::kind() const {
  if (command == "figure") return figure_kind(figure_id);
  return parse_experiment_kind(command);
}

std::string RunConfig::name() const { return command == "figure" ? figure_id : command; }

std::optional<double> parse_number(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

ParameterSet read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  ParameterSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto value = parse_number(line.substr(eq + 1));
    if (!value) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": malformed number for " + key);
    }
    out[key] = *value;
  }
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Flight-time and screen distributions from trajectory ensembles", "tetlab"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output_dir = cfg.output_dir.string();
  std::string formats = "csv,json,svg";
  std::string config_path;
  std::map<std::string, std::string> raw;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output-dir", output_dir, "Directory for the output files");
    sub->add_option("--formats", formats, "Comma-separated subset of csv,json,svg");
    sub->add_option("--config", config_path, "key=value parameter file");
    for (const auto& k : all_keys()) sub->add_option("--" + k, raw[k], key_help(k))->type_name("NUM");
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"free-particle", "free-fall", "double-slit"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    add_common(sub);
    subs.emplace_back(name, sub);
  }
  auto* fig = app.add_subcommand("figure", "Reproduce a preset figure");
  fig->add_option("--id", cfg.figure_id, "fig1a ... fig4b")->required();
  add_common(fig);
  subs.emplace_back("figure", fig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    cfg.help = true;
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.help = true;
    cfg.help_text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) cfg.command = name;
  }

  ExperimentKind kind;
  try {
    kind = cfg.kind();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }

  if (!config_path.empty()) cfg.parameters = read_config_file(config_path);
  for (const auto& [key, text] : raw) {
    if (text.empty()) continue;
    const auto v = parse_number(text);
    if (!v) throw UsageError("malformed number for --" + key + ": " + text);
    cfg.parameters[key] = *v;
  }
  const auto& ok = allowed_keys(kind);
  for (const auto& [key, v] : cfg.parameters) {
    if (std::find(ok.begin(), ok.end(), key) == ok.end()) {
      throw UsageError("parameter '" + key + "' is not accepted by " + to_string(kind));
    }
  }

  cfg.formats.clear();
  std::string item;
  for (std::size_t i = 0; i <= formats.size(); ++i) {
    if (i == formats.size() || formats[i] == ',') {
      item = trim(item);
      if (item != "csv" && item != "json" && item != "svg") throw UsageError("unknown format: " + item);
      cfg.formats.insert(item);
      item.clear();
    } else {
      item += formats[i];
    }
  }
  if (output_dir.empty()) throw UsageError("--output-dir must not be empty");
  cfg.output_dir = output_dir;
  return cfg;
}

}  // namespace tetlab::cli
