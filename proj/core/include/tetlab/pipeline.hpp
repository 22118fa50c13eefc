#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tetlab/distribution.hpp"
#include "tetlab/montecarlo.hpp"

namespace tetlab {

/// Flat key -> number map. Integer-valued keys (samples, seed, bins, grid_n)
/// must hold integral values.
using ParameterSet = std::map<std::string, double>;

enum class ExperimentKind { free_particle, free_fall, double_slit };

std::string to_string(ExperimentKind kind);
/// "free-particle", "free-fall" or "double-slit". Throws InvalidParameter.
ExperimentKind parse_experiment_kind(const std::string& name);

/// Sampled trajectories q(q0, t) on a shared time grid.
struct TrajectoryBundle {
  Grid1D times{0.0, 1.0, 2};
  std::vector<double> initial;
  std::vector<std::vector<double>> paths;  ///< paths[k][i] = Q(initial[k], times[i])
};

struct ExperimentResult {
  std::string id;
  ExperimentKind kind = ExperimentKind::free_particle;
  std::string abscissa = "t";  ///< "t" or "y"
  std::vector<SampledDistribution> curves;
  std::optional<Histogram> histogram;
  std::optional<TrajectoryBundle> trajectories;
  ParameterSet params;  ///< fully resolved parameters, defaults included
  std::uint64_t seed = 0;

  /// Throws InvalidParameter when no curve has this label.
  const SampledDistribution& curve(const std::string& label) const;
};

/// ∫ dt cond(y, t) time_pdf(t), trapezoid on the time grid, tabulated on
/// y_grid and normalized. Throws InvalidParameter unless time_pdf carries
/// unit mass within 1e-6.
SampledDistribution marginalize_time(const std::function<double(double y, double t)>& cond_pdf,
                                     const SampledDistribution& time_pdf, const Grid1D& y_grid,
                                     std::string label = "marginal");

const std::vector<std::string>& figure_ids();
/// The preset for a figure. Throws InvalidParameter for unknown ids.
ParameterSet figure_preset(const std::string& id);
ExperimentKind figure_kind(const std::string& id);
/// Keys accepted for a kind.
const std::vector<std::string>& allowed_keys(ExperimentKind kind);

/// Defaults for a kind when no figure preset applies.
ParameterSet default_parameters(ExperimentKind kind);

struct ExperimentOptions {
  /// Free fall only: return sampled trajectories instead of densities.
  bool trajectory_bundle = false;
  std::size_t bundle_size = 100;
};

/// Runs one experiment. Unknown keys or out-of-range values throw
/// InvalidParameter. `id` only names the result.
ExperimentResult run_experiment(ExperimentKind kind, const ParameterSet& params,
                                const std::string& id, const ExperimentOptions& opt = {});

/// Preset merged with overrides, then run_experiment. Figures 2a/2b yield a
/// bundle of 100 sampled trajectories instead of densities.
ExperimentResult run_figure(const std::string& id, const ParameterSet& overrides = {});

}  // namespace tetlab
