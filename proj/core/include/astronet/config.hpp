#pragma once

// Scenario configuration: JSON schema, defaults, validation and the glue that
// turns a config into an engine run.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "astronet/engine.hpp"
#include "astronet/params.hpp"
#include "astronet/stimulus.hpp"
#include "astronet/topology.hpp"

namespace astronet {

inline constexpr double kHealthyCellVolumeUm3 = 19.635;
inline constexpr double kAlzheimerCellVolumeUm3 = 11.027;
inline constexpr double kLitresPerCubicMicron = 1e-15;

double default_cell_volume_um3(Scenario s);

struct DiffusionConfig {
  double coefficient = 60.0;  // um^3/s; divided by the cell volume for D/v
  std::array<double, 3> conductance_weights{1.0, 0.5, 0.5};
  bool ip3 = true;

  bool operator==(const DiffusionConfig&) const = default;
};

struct EngineConfig {
  double snapshot_interval = 0.1;  // s
  double substep = 1e-3;           // s
  bool cell_reactions = true;
  InitialState initial_state = InitialState::Equilibrium;
  JunctionInit junction_init = JunctionInit::Stationary;
  double r_quantum = 1e-3;

  bool operator==(const EngineConfig&) const = default;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::Healthy;
  LatticeDims lattice{7, 7, 7};
  TopologySpec topology = RegularDegree{};
  std::optional<double> cell_volume_um3;  // unset: scenario default
  CellCoord transmitter{2, 3, 3};
  CellCoord receiver{4, 3, 3};
  StimulusSpec stimulus{StimulusKind::Burst, 0.0, 700.0, 1.0, 1.0};
  double sim_time_max = 6.0;  // s
  std::uint64_t rng_seed = 1;
  double delta_quantum = 0.01;         // uM
  double activation_threshold = 0.05;  // uM above baseline
  std::optional<double> gain_window;   // s; unset: stimulus duration
  double membrane_voltage_mv = -70.0;
  double junctional_voltage_mv = 0.0;
  DiffusionConfig diffusion;
  EngineConfig engine;
  // symbol -> value, applied over the preset. Tissue runs default to a
  // non-oscillating three-pool operating point; the preset's Sigma_p = 0.05
  // is the single-cell oscillatory drive.
  std::map<std::string, double> param_overrides{{"Sigma_p", 0.1}};

  bool operator==(const ScenarioConfig&) const = default;

  double volume_um3() const { return cell_volume_um3.value_or(default_cell_volume_um3(scenario)); }
  double volume_litres() const { return volume_um3() * kLitresPerCubicMicron; }
  double window() const { return gain_window.value_or(stimulus.duration); }
  /// preset(scenario) with the overrides applied.
  ModelParams model() const;
  NetworkParams network() const;
  EngineOptions engine_options() const;
};

/// Throws ConfigError naming the offending key.
void validate(const ScenarioConfig& c);

/// Parses JSON text. `source` names the origin in parse errors.
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<string>");
/// Reads, parses and validates a config file; ASTRONET_SEED overrides rng_seed.
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical JSON (every field explicit); parse_config(serialize(c)) == c.
std::string serialize(const ScenarioConfig& c);

/// Experiment matrix: a base config swept over scenarios, topologies,
/// tx-rx distances (cells along the i axis from the transmitter),
/// stimulus frequencies and seeds.
struct SweepSpec {
  std::vector<Scenario> scenarios;
  std::vector<TopologySpec> topologies;
  std::vector<int> distances;
  std::vector<double> frequencies;
  std::vector<std::uint64_t> seeds;

  bool operator==(const SweepSpec&) const = default;
};

/// Per-scenario activation thresholds. "fixed" uses activation_threshold;
/// "calibrated" measures each scenario's unstimulated noise first.
struct ThresholdPolicy {
  bool calibrated = false;
  std::size_t control_runs = 4;
  double quantile = 0.99;  // of per-cell peak excursions in control runs
  double floor = 0.05;     // uM, lower bound on the calibrated threshold

  bool operator==(const ThresholdPolicy&) const = default;
};

struct MatrixConfig {
  ScenarioConfig base;
  SweepSpec sweep;
  ThresholdPolicy threshold;

  bool operator==(const MatrixConfig&) const = default;
};

MatrixConfig parse_matrix_config(const std::string& text, const std::string& source = "<string>");
MatrixConfig load_matrix_config(const std::filesystem::path& path);
std::string serialize(const MatrixConfig& m);

/// Seed for replica `r` of a run seeded with `seed` (replica 0 is `seed`).
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t r);

/// The graph a config describes, built from the run's RNG stream.
TissueGraph build_graph(const ScenarioConfig& c, Rng& rng);

/// Builds the graph and runs the engine, both from one RNG seeded with
/// rng_seed.
EventLog run(const ScenarioConfig& c);
EventLog run(const ScenarioConfig& c, const EngineOptions& opt);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const std::string& canonical);

}  // namespace astronet
