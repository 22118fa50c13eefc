#pragma once

#include <filesystem>
#include <string>

#include "run_config.hpp"
#include "tetlab/pipeline.hpp"

namespace tetlab::cli {

/// One column per curve (or per trajectory for bundles), abscissa first,
/// 17 significant digits. A histogram goes to `<stem>.hist.csv`.
void emit_csv(const ExperimentResult& result, const std::filesystem::path& path);

std::string render_json(const ExperimentResult& result);
void emit_json(const ExperimentResult& result, const std::filesystem::path& path);

/// Standalone line chart. Throws InvalidParameter when there is nothing to draw.
std::string render_svg(const ExperimentResult& result);
void emit_svg(const ExperimentResult& result, const std::filesystem::path& path);

/// Parameters, seed, grids and tool version; no timestamps or host details.
std::string render_run_record(const RunConfig& cfg, const ExperimentResult& result);

/// Writes the requested formats plus run.json into cfg.output_dir.
void write_outputs(const RunConfig& cfg, const ExperimentResult& result);

/// Full command-line entry point. Returns the exit status.
int run_main(int argc, const char* const* argv);

}  // namespace tetlab::cli
