#include "emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tetlab/errors.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

json grid_json(const Grid1D& g) { return {{"lo", g.lo()}, {"hi", g.hi()}, {"n", g.size()}}; }

const Grid1D& result_grid(const ExperimentResult& r) {
  if (!r.curves.empty()) return r.curves.front().grid;
  if (r.trajectories) return r.trajectories->times;
  throw InvalidParameter("result has no curves");
}

std::string trajectory_label(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "traj_%03zu", k);
  return buf;
}

const char* kPalette[] = {"#d4a017", "#1f4e9c", "#c0392b", "#2e8b57", "#7d3c98", "#555555"};

}  // namespace

void emit_csv(const ExperimentResult& r, const std::filesystem::path& path) {
  const Grid1D& g = result_grid(r);
  std::string out = r.abscissa;
  if (r.trajectories) {
    for (std::size_t k = 0; k < r.trajectories->paths.size(); ++k) out += "," + trajectory_label(k);
  } else {
    for (const auto& c : r.curves) out += "," + c.label;
  }
  out += "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += fmt17(g[i]);
    if (r.trajectories) {
      for (const auto& p : r.trajectories->paths) out += "," + fmt17(p[i]);
    } else {
      for (const auto& c : r.curves) out += "," + fmt17(c.density[i]);
    }
    out += "\n";
  }
  write_file(path, out);

  if (r.histogram) {
    const auto& h = *r.histogram;
    std::string hs = "bin_lo,bin_hi,count,density\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      hs += fmt17(h.bin_edges[i]) + "," + fmt17(h.bin_edges[i + 1]) + "," + std::to_string(h.counts[i]) +
            "," + fmt17(h.normalized_density[i]) + "\n";
    }
    auto hist_path = path;
    hist_path.replace_extension(".hist.csv");
    write_file(hist_path, hs);
  }
}

std::string render_json(const ExperimentResult& r) {
  const Grid1D& g = result_grid(r);
  json j;
  j["id"] = r.id;
  j["kind"] = to_string(r.kind);
  j["abscissa"] = r.abscissa;
  j["grid"] = grid_json(g);
  j["x"] = g.points();
  json curves = json::object();
  for (const auto& c : r.curves) curves[c.label] = c.density;
  j["curves"] = curves;
  if (r.histogram) {
    j["histogram"] = {{"bin_edges", r.histogram->bin_edges},
                      {"counts", r.histogram->counts},
                      {"density", r.histogram->normalized_density}};
  }
  if (r.trajectories) {
    j["trajectories"] = {{"initial", r.trajectories->initial}, {"paths", r.trajectories->paths}};
  }
  j["parameters"] = r.params;
  j["seed"] = r.seed;
  return j.dump(1) + "\n";
}

void emit_json(const ExperimentResult& r, const std::filesystem::path& path) { write_file(path, render_json(r)); }

std::string render_svg(const ExperimentResult& r) {
  const bool bundle = r.trajectories && !r.trajectories->paths.empty();
  if (r.curves.empty() && !bundle) throw InvalidParameter("render_svg: nothing to plot");

  const Grid1D& g = result_grid(r);
  const double W = 800, H = 500, ml = 70, mr = 150, mt = 30, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double y_lo = 0.0, y_hi = 0.0;
  bool first = true;
  auto widen = [&](double v) {
    if (!std::isfinite(v)) return;
    if (first) {
      y_lo = y_hi = v;
      first = false;
    }
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  };
  if (bundle) {
    for (const auto& p : r.trajectories->paths)
      for (double v : p) widen(v);
  } else {
    widen(0.0);
    for (const auto& c : r.curves)
      for (double v : c.density) widen(v);
    if (r.histogram)
      for (double v : r.histogram->normalized_density) widen(v);
  }
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  if (bundle) y_lo -= pad;
  y_hi += pad;

  auto sx = [&](double x) { return ml + (x - g.lo()) / (g.hi() - g.lo()) * pw; };
  auto sy = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<title>" << r.id << "</title>\n";
  s << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = g.lo() + (g.hi() - g.lo()) * k / 5.0;
    const double yv = y_lo + (y_hi - y_lo) * k / 5.0;
    const std::string px = fmt("%.2f", sx(xv)), py = fmt("%.2f", sy(yv));
    s << "<line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px << "\" y2=\"" << mt + ph + 5
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << px << "\" y=\"" << mt + ph + 20 << "\" text-anchor=\"middle\">" << fmt("%.4g", xv)
      << "</text>\n";
    s << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << ml - 8 << "\" y=\"" << py << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
      << fmt("%.4g", yv) << "</text>\n";
  }
  s << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << r.abscissa
    << "</text>\n";

  auto polyline = [&](const std::vector<double>& ys, const char* color, double width, double opacity) {
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"";
    if (opacity < 1.0) s << " stroke-opacity=\"" << opacity << "\"";
    s << " points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (i) s << ' ';
      s << fmt("%.2f", sx(g[i])) << ',' << fmt("%.2f", sy(ys[i]));
    }
    s << "\"/>\n";
  };

  std::vector<std::pair<std::string, const char*>> legend;
  if (bundle) {
    for (const auto& p : r.trajectories->paths) polyline(p, kPalette[1], 0.6, 0.5);
    // Detector line.
    if (y_lo < 0.0 && y_hi > 0.0) {
      s << "<line x1=\"" << ml << "\" y1=\"" << fmt("%.2f", sy(0.0)) << "\" x2=\"" << ml + pw << "\" y2=\""
        << fmt("%.2f", sy(0.0)) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    }
    legend.emplace_back("trajectories", kPalette[1]);
  } else {
    std::size_t k = 0;
    for (const auto& c : r.curves) {
      const char* color = kPalette[k % std::size(kPalette)];
      polyline(c.density, color, k == 0 ? 4.0 : 1.8, 1.0);
      legend.emplace_back(c.label, color);
      ++k;
    }
    if (r.histogram) {
      const auto& h = *r.histogram;
      for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double xc = 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]);
        if (xc < g.lo() || xc > g.hi()) continue;
        s << "<circle cx=\"" << fmt("%.2f", sx(xc)) << "\" cy=\"" << fmt("%.2f", sy(h.normalized_density[i]))
          << "\" r=\"2.2\" fill=\"#3498db\"/>\n";
      }
      legend.emplace_back("monte carlo", "#3498db");
    }
  }

  double ly = mt + 10;
  for (const auto& [label, color] : legend) {
    s << "<line x1=\"" << ml + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    s << "<text x=\"" << ml + pw + 46 << "\" y=\"" << ly << "\" dominant-baseline=\"middle\">" << label
      << "</text>\n";
    ly += 20;
  }
  s << "</svg>\n";
  return s.str();
}

void emit_svg(const ExperimentResult& r, const std::filesystem::path& path) { write_file(path, render_svg(r)); }

std::string render_run_record(const RunConfig& cfg, const ExperimentResult& r) {
  json j;
  j["tool"] = "tetlab";
  j["version"] = TETLAB_VERSION;
  j["command"] = cfg.command;
  if (cfg.command == "figure") j["figure_id"] = cfg.figure_id;
  j["parameters"] = r.params;
  j["explicit_parameters"] = cfg.parameters;
  j["seed"] = r.seed;
  json grids = json::object();
  grids[r.abscissa] = grid_json(result_grid(r));
  if (r.histogram) {
    grids["histogram"] = {{"lo", r.histogram->bin_edges.front()},
                          {"hi", r.histogram->bin_edges.back()},
                          {"bins", r.histogram->counts.size()}};
  }
  j["grids"] = grids;
  j["formats"] = cfg.formats;
  return j.dump(1) + "\n";
}

void write_outputs(const RunConfig& cfg, const ExperimentResult& r) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  const auto stem = cfg.output_dir / cfg.name();
  if (cfg.formats.contains("csv")) emit_csv(r, stem.string() + ".csv");
  if (cfg.formats.contains("json")) emit_json(r, stem.string() + ".json");
  if (cfg.formats.contains("svg")) emit_svg(r, stem.string() + ".svg");
  write_file(cfg.output_dir / "run.json", render_run_record(cfg, r));
}

int run_main(int argc, const char* const* argv) {
  if (const char* env = std::getenv("TETLAB_THREADS"); env && !parse_thread_count(env)) {
    std::cerr << "tetlab: TETLAB_THREADS must be a positive integer\n";
    return kUsage;
  }
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "tetlab: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "tetlab: " << e.what() << "\n";
    return kIo;
  }
  if (cfg.help) {
    std::cout << cfg.help_text;
    return kOk;
  }
  try {
    const ExperimentResult r = cfg.command == "figure"
                                   ? run_figure(cfg.figure_id, cfg.parameters)
                                   : [&] {
                                       auto p = default_parameters(cfg.kind());
                                       for (const auto& [k, v] : cfg.parameters) p[k] = v;
                                       return run_experiment(cfg.kind(), p, cfg.name());
                                     }();
    write_outputs(cfg, r);
  } catch (const InvalidParameter& e) {
    std::cerr << "tetlab: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "tetlab: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "tetlab: numerical failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}

}  // namespace tetlab::cli
