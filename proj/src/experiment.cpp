#include "decaylab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "decaylab/errors.hpp"
#include "decaylab/format.hpp"
#include "decaylab/radial_heat.hpp"
#include "decaylab/radial_wave.hpp"
#include "decaylab/weights.hpp"

namespace decaylab {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("config key '" + std::string(key) + "' has malformed value '" +
                          std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw InvalidArgument("config key '" + std::string(key) + "' expects a boolean, got '" +
                        std::string(text) + "'");
}

std::vector<double> checkpoint_times(const std::vector<double>& samples, int count) {
  std::vector<double> out;
  if (count <= 0 || samples.empty()) return out;
  const auto n = static_cast<int>(samples.size());
  for (int k = 1; k <= count; ++k) {
    const int index = std::min(n - 1, (k * (n - 1)) / count);
    if (out.empty() || out.back() != samples[static_cast<std::size_t>(index)]) {
      out.push_back(samples[static_cast<std::size_t>(index)]);
    }
  }
  return out;
}

std::string checkpoint_name(const char* prefix, double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  std::string stamp(buf);
  std::replace(stamp.begin(), stamp.end(), '.', 'p');
  return std::string(prefix) + "_t" + stamp + ".csv";
}

RateFit try_fit(const std::vector<std::pair<double, double>>& series,
                std::pair<double, double> window) {
  try {
    return fit_decay_rate(series, window);
  } catch (const InvalidArgument&) {
    return {kNaN, kNaN, kNaN, 0};
  }
}

void write_fit(std::ostream& out, const char* name, const RateFit& fit) {
  out << name << "_slope=" << format_double(fit.slope) << '\n'
      << name << "_residual=" << format_double(fit.residual) << '\n'
      << name << "_points=" << fit.points << '\n';
}

void write_row(std::ostream& out, const SampleRow& row) {
  const EnergyRecord& e = row.energy;
  out << format_double(e.t) << ',' << format_double(e.e_dx) << ',' << format_double(e.e_dt) << ','
      << format_double(e.e_a) << ',' << format_double(e.e_phi) << ',' << format_double(e.e_star)
      << ',' << format_double(e.dissip) << ',' << format_double(row.gap) << ','
      << format_double(row.gap_normalized) << '\n';
}

const char* kGnuplotScript = R"(set datafile separator ','
set key autotitle columnhead
set logscale xy
set xlabel 't'
set terminal png size 1000,700
set output 'energies.png'
plot 'energies.csv' using 1:2 with linespoints, \
     '' using 1:3 with linespoints, \
     '' using 1:4 with linespoints, \
     '' using 1:7 with linespoints, \
     '' using 1:8 with linespoints, \
     '' using 1:9 with linespoints
set output 'checkpoints.png'
unset logscale
set xlabel 'r'
plot for [f in system('ls wave_t*.csv 2>/dev/null')] f using 1:2 with lines title f
)";

}  // namespace

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "alpha") alpha = parse_value<double>(key, value);
  else if (key == "dim") dim = parse_value<int>(key, value);
  else if (key == "r_inner") r_inner = parse_value<double>(key, value);
  else if (key == "gamma") gamma = parse_value<double>(key, value);
  else if (key == "t0") t0 = parse_value<double>(key, value);
  else if (key == "t_final") t_final = parse_value<double>(key, value);
  else if (key == "dr") dr = parse_value<double>(key, value);
  else if (key == "dt") dt = parse_value<double>(key, value);
  else if (key == "ic") ic = parse_descriptor(std::string(value)).to_string();
  else if (key == "samples") samples = parse_value<int>(key, value);
  else if (key == "checkpoints") checkpoints = parse_value<int>(key, value);
  else if (key == "heat") heat = parse_bool(key, value);
  else if (key == "out") out = std::string(value);
  else throw InvalidArgument("unknown config key '" + std::string(key) + "'");
}

void ExperimentConfig::validate() const {
  const ModelParams params = model();
  params.validate();
  if (!(t0 >= 1)) throw InvalidArgument("t0 must be at least 1");
  if (!(t_final >= 0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be >= 0");
  if (!(dr > 0) || dr > 0.25) throw InvalidArgument("dr must lie in (0, 0.25]");
  if (!(dt > 0) || dt > 0.9 * dr) throw CflError("dt must lie in (0, 0.9 dr]");
  if (samples < 1) throw InvalidArgument("samples must be positive");
  if (checkpoints < 0) throw InvalidArgument("checkpoints must be non-negative");
  if (out.empty()) throw InvalidArgument("output directory must be named");
  descriptor().validate(params);
}

std::vector<std::string> ExperimentConfig::warnings() const {
  std::vector<std::string> out_msgs;
  if (!gamma_in_range(gamma, model())) {
    out_msgs.push_back("gamma = " + format_double(gamma) + " lies outside [alpha, N + 2 - 2 alpha) = [" +
                       format_double(alpha) + ", " + format_double(dim + 2 - 2 * alpha) + ")");
  }
  return out_msgs;
}

std::string ExperimentConfig::to_string() const {
  std::ostringstream s;
  s << "alpha=" << format_double(alpha) << '\n'
    << "dim=" << dim << '\n'
    << "r_inner=" << format_double(r_inner) << '\n'
    << "gamma=" << format_double(gamma) << '\n'
    << "t0=" << format_double(t0) << '\n'
    << "t_final=" << format_double(t_final) << '\n'
    << "dr=" << format_double(dr) << '\n'
    << "dt=" << format_double(dt) << '\n'
    << "ic=" << ic << '\n'
    << "samples=" << samples << '\n'
    << "checkpoints=" << checkpoints << '\n'
    << "heat=" << (heat ? "true" : "false") << '\n'
    << "out=" << out << '\n';
  return s.str();
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  int line_number = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_number) + " lacks '='");
    }
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const fs::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

std::vector<double> log_sample_times(double t_final, double dt, int count) {
  std::vector<double> out{0.0};
  if (t_final <= 0 || count <= 1) return out;
  const auto steps = std::llround(t_final / dt);
  const double lo = std::log(std::min(1.0, t_final));
  const double hi = std::log(t_final);
  long long previous = 0;
  for (int k = 0; k < count - 1; ++k) {
    const double t = count == 2 ? t_final : std::exp(lo + (hi - lo) * k / (count - 2));
    const long long step = std::clamp<long long>(std::llround(t / dt), 1, steps);
    if (step > previous) {
      out.push_back(static_cast<double>(step) * dt);
      previous = step;
    }
  }
  return out;
}

Simulation simulate(const ExperimentConfig& config,
                    const std::function<void(const SampleRow&)>& on_row) {
  config.validate();
  const ModelParams params = config.model();
  const DataDescriptor descriptor = config.descriptor();
  RadialGrid grid = build_grid(params, descriptor.support_extent(params), config.t_final, config.dr);
  InitialData data = sample(descriptor, grid);
  const EnergyWeights weights = EnergyWeights::for_gamma(config.gamma, config.alpha, config.t0);
  Simulation sim{grid, data, weights, data_norms(data, grid, config.gamma), {}, {}, {}};

  const std::vector<double> times = log_sample_times(config.t_final, config.dt, config.samples);
  const std::vector<double> snapshots = checkpoint_times(times, config.checkpoints);

  std::vector<HeatState> heat;
  if (config.heat) {
    heat = run_heat(asymptotic_profile(data, grid), grid, config.t_final, config.dt, times);
    for (double t : snapshots) {
      const auto at = std::find(times.begin(), times.end(), t);
      sim.heat_checkpoints.push_back(heat[static_cast<std::size_t>(at - times.begin())]);
    }
  }

  const double gap_exponent = (config.gamma - config.alpha) / (2 * (2 - config.alpha));
  std::size_t next = 0;
  auto emit = [&](const WaveState& state) {
    SampleRow row;
    row.energy = energy_record(weights, state, grid);
    row.plain_energy = energy_dx(0, 0, state, grid) + energy_dt(0, 0, state, grid);
    if (config.heat) {
      const HeatState& v = heat[next];
      row.gap = l2_dmu_norm(state.u - v.v, grid);
      row.gap_normalized = row.gap * std::pow(1 + state.t, gap_exponent);
      row.heat_norm = l2_dmu_norm(v.v, grid);
    } else {
      row.gap = row.gap_normalized = row.heat_norm = kNaN;
    }
    return row;
  };

  DissipationMeter meter(grid, weights.beta, weights.t0);
  auto record = [&](const WaveState& state) {
    SampleRow row = emit(state);
    row.energy.dissip = meter.total();
    sim.rows.push_back(row);
    if (on_row) on_row(row);
    ++next;
  };

  record(initial_state(data));
  const auto step_of = [&](double t) { return std::llround(t / config.dt); };
  WaveRunOptions options{config.t_final, config.dt, snapshots, Damping::on};
  sim.wave_checkpoints = run_wave(data, grid, options, [&](const WaveState& before, const WaveState& after) {
    meter(before, after);
    if (next < times.size() && step_of(after.t) == step_of(times[next])) record(after);
  });
  return sim;
}

Simulation run_experiment(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  const fs::path dir(config.out);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.txt");
    cfg << config.to_string();
  }
  for (const auto& w : config.warnings()) {
    if (log) *log << "warning: " << w << '\n';
  }

  std::ofstream csv(dir / "energies.csv");
  if (!csv) throw InvalidArgument("cannot write " + (dir / "energies.csv").string());
  csv << kEnergiesHeader << '\n';
  Simulation sim = [&] {
    try {
      return simulate(config, [&](const SampleRow& row) {
        write_row(csv, row);
        csv.flush();
      });
    } catch (const Error& e) {
      csv.flush();
      throw Error("run in " + dir.string() + " aborted: " + e.what());
    }
  }();

  const RadialGrid& grid = sim.grid;
  for (const WaveState& s : sim.wave_checkpoints) {
    std::ofstream f(dir / checkpoint_name("wave", s.t));
    f << "r,u,ut\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      f << format_double(grid.nodes()[i]) << ',' << format_double(s.u[i]) << ','
        << format_double(s.ut[i]) << '\n';
    }
  }
  for (const HeatState& s : sim.heat_checkpoints) {
    std::ofstream f(dir / checkpoint_name("heat", s.t));
    f << "r,v\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      f << format_double(grid.nodes()[i]) << ',' << format_double(s.v[i]) << '\n';
    }
  }

  // Profile and weight tables for the run's beta.
  {
    const WeightSpec spec{{config.alpha, config.dim, sim.weights.beta}, config.t0};
    std::vector<double> s_values, radii, times;
    for (int k = 0; k < 64; ++k) s_values.push_back(std::pow(10.0, -3 + 6.0 * k / 63));
    for (int k = 0; k < 16; ++k) radii.push_back(config.r_inner * std::pow(64.0, k / 15.0));
    for (double t : {0.0, 10.0, 100.0}) times.push_back(t);
    std::ofstream profile(dir / "profile.csv");
    write_profile_table(profile, spec.profile, s_values);
    std::ofstream weight(dir / "weight.csv");
    write_weight_table(weight, spec, radii, times);
  }

  // Slopes and the summary.
  std::vector<std::pair<double, double>> weighted, plain, gap, heat_norm;
  for (const SampleRow& row : sim.rows) {
    weighted.emplace_back(row.energy.t, row.energy.e_dx + row.energy.e_dt);
    plain.emplace_back(row.energy.t, row.plain_energy);
    gap.emplace_back(row.energy.t, row.gap);
    heat_norm.emplace_back(row.energy.t, row.heat_norm);
  }
  const std::pair<double, double> window{0.25 * config.t_final, config.t_final};
  const RunSlopes slopes{try_fit(weighted, window), try_fit(plain, window), try_fit(gap, window),
                         try_fit(heat_norm, window)};
  double bounded_max = 0.0;
  for (const SampleRow& row : sim.rows) {
    bounded_max = std::max(bounded_max, row.energy.e_dx + row.energy.e_dt + row.energy.dissip);
  }

  std::ofstream summary(dir / "summary.txt");
  const ModelParams params = config.model();
  summary << "# configuration\n" << config.to_string() << "# grid\n"
          << "r_outer=" << format_double(grid.r_outer()) << '\n'
          << "interior_nodes=" << grid.interior() << '\n'
          << "grid_dr=" << format_double(grid.dr()) << '\n'
          << "# exponents\n"
          << "beta=" << format_double(sim.weights.beta) << '\n'
          << "lambda=" << format_double(sim.weights.lambda) << '\n'
          << "gamma_in_range=" << (gamma_in_range(config.gamma, params) ? "yes" : "no") << '\n'
          << "# data norms\n"
          << "e0=" << format_double(sim.norms.e0) << '\n'
          << "e1=" << format_double(sim.norms.e1) << '\n';
  if (config.gamma < 2 - config.alpha) {
    summary << "low_order_term=" << format_double(sim.norms.low) << '\n';
  }
  summary << "# sup over samples of e_dx + e_dt + dissip\n"
          << "bounded_functional_max=" << format_double(bounded_max) << '\n'
          << "# log-log slopes on [" << format_double(window.first) << ", "
          << format_double(window.second) << "]\n";
  write_fit(summary, "weighted_energy", slopes.weighted_energy);
  write_fit(summary, "plain_energy", slopes.plain_energy);
  write_fit(summary, "gap", slopes.gap);
  write_fit(summary, "heat_norm", slopes.heat_norm);
  summary << "# reference exponents\n"
          << "plain_energy_ideal=" << format_double(-sim.weights.beta) << '\n'
          << "gap_ideal=" << format_double(-(config.gamma - config.alpha) / (2 * (2 - config.alpha)))
          << '\n'
          << "heat_norm_ideal=" << format_double(-params.cexp() / 2) << '\n';

  std::ofstream(dir / "energies.gp") << kGnuplotScript;
  if (log) *log << "wrote " << sim.rows.size() << " samples to " << (dir / "energies.csv").string() << '\n';
  return sim;
}

int sweep_threads() {
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("DECAYLAB_THREADS")) {
    int value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) cap = value;
  }
  return cap;
}

std::vector<std::string> run_sweep(const std::vector<ExperimentConfig>& configs, int threads,
                                   std::ostream* log) {
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = cursor++; i < configs.size(); i = cursor++) {
      std::ostringstream local;
      try {
        run_experiment(configs[i], &local);
      } catch (const std::exception& e) {
        errors[i] = configs[i].out + ": " + e.what();
      }
      if (log) {
        const std::lock_guard lock(log_mutex);
        *log << local.str();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::jthread> pool;
  for (std::size_t k = 1; k < std::min(count, configs.size()); ++k) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::erase(errors, std::string{});
  return errors;
}

}  // namespace decaylab
