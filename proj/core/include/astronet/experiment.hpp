#pragma once

// Experiment matrix: one engine run per (scenario, topology, distance,
// frequency, seed) cell, metrics streamed from each run, tidy table out.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "astronet/comms.hpp"
#include "astronet/config.hpp"

namespace astronet {

struct MatrixCell {
  Scenario scenario = Scenario::Healthy;
  std::size_t topology_index = 0;
  int distance = 1;
  double frequency_hz = 0.0;
  std::uint64_t seed = 0;
};

struct MatrixRow {
  MatrixCell cell;
  std::string topology;  // topology_label
  LinkMetrics metrics;
  double threshold = 0.0;  // activation threshold the run was scored with
  std::uint64_t events = 0;
};

struct MatrixError {
  MatrixCell cell;
  std::string topology;
  std::string message;
};

struct MatrixResult {
  std::vector<MatrixRow> rows;  // matrix order, failed cells omitted
  std::vector<MatrixError> errors;
  std::map<Scenario, double> thresholds;
};

struct MatrixRunOptions {
  unsigned threads = 1;
  /// Called after each finished cell with (done, total). Serialized.
  std::function<void(std::size_t, std::size_t)> on_progress;
};

/// Every cell of the sweep in a fixed order: scenario, topology, distance,
/// frequency, seed (innermost).
std::vector<MatrixCell> enumerate_cells(const MatrixConfig& m);

/// The single-run config a matrix cell describes. The receiver sits
/// `distance` cells from the transmitter along the i axis.
ScenarioConfig cell_config(const MatrixConfig& m, const MatrixCell& cell);

/// Runs `c` with metrics streamed from the engine (no event log kept).
LinkMetrics measure(const ScenarioConfig& c, std::uint64_t* events = nullptr);

/// Activation threshold for `scenario` under `policy`: the `quantile` of
/// per-cell peak excursions over unstimulated control runs, floored.
double calibrate_threshold(const MatrixConfig& m, Scenario scenario);

/// Runs the whole matrix. Per-cell failures are collected, never thrown.
/// Results do not depend on the thread count.
MatrixResult run_experiment_matrix(const MatrixConfig& m, const MatrixRunOptions& opt = {});

/// `scenario,topology,distance_cells,frequency_hz,seed,extent,delay_s,gain_db`
void write_matrix_csv(std::ostream& os, const MatrixResult& r);
/// Per-group (scenario, topology, distance, frequency) medians and quartiles.
std::string matrix_summary_json(const MatrixResult& r);

struct Quartiles {
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};
/// Linear-interpolated quartiles; +inf entries sort last. Empty input gives NaN.
Quartiles quartiles(std::vector<double> v);

}  // namespace astronet
