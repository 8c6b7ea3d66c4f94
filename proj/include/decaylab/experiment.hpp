#ifndef DECAYLAB_EXPERIMENT_HPP
#define DECAYLAB_EXPERIMENT_HPP

// Experiment configuration and the run/sweep drivers.
//
// Config files are plain key=value lines; '#' starts a comment. Keys:
//   alpha dim r_inner gamma t0 t_final dr dt ic samples checkpoints heat out

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "decaylab/diagnostics.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/radial_grid.hpp"

namespace decaylab {

struct ExperimentConfig {
  double alpha = 0.0;
  int dim = 3;
  double r_inner = 1.0;
  double gamma = 2.0;
  double t0 = 16.0;
  double t_final = 200.0;
  double dr = 0.05;
  double dt = 0.025;
  std::string ic = "bump:center=2,width=0.5,amp=1";
  int samples = 64;      // log-spaced sample times, t = 0 included
  int checkpoints = 4;   // trajectory snapshots written as CSV
  bool heat = true;      // run the heat comparison
  std::string out = "out";

  ModelParams model() const { return {alpha, dim, r_inner}; }
  DataDescriptor descriptor() const { return parse_descriptor(ic); }

  /// Sets one key from its text form. Throws InvalidArgument on an unknown
  /// key or a malformed value.
  void set(std::string_view key, std::string_view value);

  /// Hard errors: alpha, dim, r_inner, t0 >= 1, t_final >= 0, dr, dt, the
  /// descriptor and the sample counts.
  void validate() const;
  /// Soft problems worth reporting (gamma outside [alpha, N + 2 - 2 alpha)).
  std::vector<std::string> warnings() const;

  /// Canonical key=value text, one key per line in a fixed order.
  std::string to_string() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Applies every key=value line of text on top of base.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// t = 0 followed by count - 1 log-spaced times on [min(1, t_final), t_final],
/// snapped to the time-step lattice and deduplicated.
std::vector<double> log_sample_times(double t_final, double dt, int count);

/// One sample time of a run.
struct SampleRow {
  EnergyRecord energy;
  double plain_energy = 0;  // E^0_dx + E^0_dt
  double gap = 0;           // NaN without the heat comparison
  double gap_normalized = 0;
  double heat_norm = 0;
};

struct Simulation {
  RadialGrid grid;
  InitialData data;
  EnergyWeights weights;
  DataNorms norms;
  std::vector<SampleRow> rows;
  std::vector<WaveState> wave_checkpoints;
  std::vector<HeatState> heat_checkpoints;
};

/// Runs the heat comparison (if enabled) and then the wave, reporting each
/// sample row through on_row as soon as it is complete.
Simulation simulate(const ExperimentConfig& config,
                    const std::function<void(const SampleRow&)>& on_row = {});

/// Fitted slopes over the last three quarters of the horizon, in log time.
struct RunSlopes {
  RateFit weighted_energy;  // E_dx^beta + E_dt^beta
  RateFit plain_energy;
  RateFit gap;
  RateFit heat_norm;
};

/// Writes config.txt, energies.csv (flushed row by row), summary.txt,
/// profile.csv, weight.csv, checkpoint CSVs and a gnuplot script into
/// config.out. Output is byte-identical for identical configs.
Simulation run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

/// Thread cap for sweeps: DECAYLAB_THREADS if set to a positive integer,
/// else the hardware concurrency.
int sweep_threads();

/// Runs every config, at most threads at a time. Returns one message per
/// failed config (empty on success).
std::vector<std::string> run_sweep(const std::vector<ExperimentConfig>& configs, int threads,
                                   std::ostream* log = nullptr);

/// Energies CSV header, in its stable column order.
inline constexpr const char* kEnergiesHeader = "t,e_dx,e_dt,e_a,e_phi,e_star,dissip,D,D_normalized";

}  // namespace decaylab

#endif  // DECAYLAB_EXPERIMENT_HPP
