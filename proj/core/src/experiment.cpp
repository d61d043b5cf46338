#include "astronet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

#include "astronet/format.hpp"

namespace astronet {

std::vector<MatrixCell> enumerate_cells(const MatrixConfig& m) {
  std::vector<MatrixCell> cells;
  const auto& s = m.sweep;
  cells.reserve(s.scenarios.size() * s.topologies.size() * s.distances.size() * s.frequencies.size() *
                s.seeds.size());
  for (auto sc : s.scenarios)
    for (std::size_t t = 0; t < s.topologies.size(); ++t)
      for (int d : s.distances)
        for (double f : s.frequencies)
          for (auto seed : s.seeds) cells.push_back({sc, t, d, f, seed});
  return cells;
}

ScenarioConfig cell_config(const MatrixConfig& m, const MatrixCell& cell) {
  ScenarioConfig c = m.base;
  // The preset volume follows the scenario unless the base pins one.
  c.scenario = cell.scenario;
  c.topology = m.sweep.topologies.at(cell.topology_index);
  c.receiver = c.transmitter;
  c.receiver.i += cell.distance;
  c.stimulus.frequency_hz = cell.frequency_hz;
  c.rng_seed = cell.seed;
  validate(c);
  return c;
}

namespace {

CommsProbe run_probe(const ScenarioConfig& c, std::uint64_t* events) {
  EngineOptions opt = c.engine_options();
  opt.keep_events = false;
  opt.snapshot_interval = 0.0;

  Rng rng(c.rng_seed);
  const TissueGraph g = build_graph(c, rng);
  const NetworkParams np = c.network();
  const CellId tx = cell_id(c.lattice, c.transmitter);
  const CellId rx = cell_id(c.lattice, c.receiver);

  ProbeSettings ps;
  ps.activation_threshold = c.activation_threshold;
  ps.stimulus_start = c.stimulus.start;
  ps.gain_window = c.window();
  const std::vector<CellPools> init(g.cell_count(), initial_pools(np, opt.initial_state));
  CommsProbe probe(init, tx, rx, ps);
  opt.on_event = [&probe](const ReactionEvent& e) { probe.observe(e); };
  const EventLog log = simulate(g, np, apply_stimulus(c.stimulus), tx, rx, opt, rng);
  if (events) *events = log.total_events;
  return probe;
}

}  // namespace

LinkMetrics measure(const ScenarioConfig& c, std::uint64_t* events) { return run_probe(c, events).metrics(); }

double calibrate_threshold(const MatrixConfig& m, Scenario scenario) {
  const auto& pol = m.threshold;
  if (!pol.calibrated) return m.base.activation_threshold;
  std::vector<double> pooled;
  for (std::size_t r = 0; r < pol.control_runs; ++r) {
    MatrixCell cell{scenario, r % m.sweep.topologies.size(), m.sweep.distances.front(), 0.0,
                    replica_seed(m.base.rng_seed ^ 0x636f6e74726f6cULL, r)};
    ScenarioConfig c = cell_config(m, cell);
    c.stimulus.amplitude = 0.0;
    const auto ex = run_probe(c, nullptr).peak_excursions();
    pooled.insert(pooled.end(), ex.begin(), ex.end());
  }
  std::sort(pooled.begin(), pooled.end());
  const double pos = pol.quantile * static_cast<double>(pooled.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, pooled.size() - 1);
  const double q = pooled[lo] + (pos - static_cast<double>(lo)) * (pooled[hi] - pooled[lo]);
  return std::max(pol.floor, q);
}

MatrixResult run_experiment_matrix(const MatrixConfig& m, const MatrixRunOptions& opt) {
  MatrixResult out;
  const auto cells = enumerate_cells(m);
  for (auto sc : m.sweep.scenarios) {
    if (!out.thresholds.count(sc)) out.thresholds[sc] = calibrate_threshold(m, sc);
  }

  struct Slot {
    std::optional<MatrixRow> row;
    std::optional<MatrixError> error;
  };
  std::vector<Slot> slots(cells.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& cell = cells[i];
      const std::string label = topology_label(m.sweep.topologies[cell.topology_index]);
      try {
        ScenarioConfig c = cell_config(m, cell);
        c.activation_threshold = out.thresholds.at(cell.scenario);
        MatrixRow row{cell, label, {}, c.activation_threshold, 0};
        row.metrics = measure(c, &row.events);
        if (row.metrics.channel_gain_db > 0.0) {
          throw std::runtime_error("positive channel gain " + format_double(row.metrics.channel_gain_db) + " dB");
        }
        slots[i].row = std::move(row);
      } catch (const std::exception& e) {
        slots[i].error = MatrixError{cell, label, e.what()};
      }
      if (opt.on_progress) {
        std::lock_guard lk(mu);
        opt.on_progress(++done, cells.size());
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(cells.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& s : slots) {
    if (s.row) out.rows.push_back(std::move(*s.row));
    if (s.error) out.errors.push_back(std::move(*s.error));
  }
  return out;
}

void write_matrix_csv(std::ostream& os, const MatrixResult& r) {
  os << "scenario,topology,distance_cells,frequency_hz,seed,extent,delay_s,gain_db\n";
  for (const auto& row : r.rows) {
    os << to_string(row.cell.scenario) << ',' << row.topology << ',' << row.cell.distance << ','
       << format_double(row.cell.frequency_hz) << ',' << row.cell.seed << ',' << row.metrics.propagation_extent << ','
       << format_delay(row.metrics.molecular_delay) << ',' << format_double(row.metrics.channel_gain_db) << '\n';
  }
}

Quartiles quartiles(std::vector<double> v) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (v.empty()) return {nan, nan, nan};
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= v.size()) return v[lo];
    const double a = v[lo], b = v[lo + 1];
    if (std::isinf(a) || std::isinf(b)) return a == b ? a : b;
    return a + frac * (b - a);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json quartile_json(const std::vector<double>& v) {
  const auto q = quartiles(v);
  return {{"q1", number_or_null(q.q1)}, {"median", number_or_null(q.median)}, {"q3", number_or_null(q.q3)}};
}

}  // namespace

std::string matrix_summary_json(const MatrixResult& r) {
  using nlohmann::json;
  json out;
  out["thresholds_um"] = json::object();
  for (const auto& [sc, th] : r.thresholds) out["thresholds_um"][std::string(to_string(sc))] = th;

  // Rows of one group are contiguous in matrix order (seed is innermost).
  json groups = json::array();
  for (std::size_t i = 0; i < r.rows.size();) {
    const auto& a = r.rows[i];
    std::vector<double> ext, del, gain;
    std::size_t never = 0, j = i;
    for (; j < r.rows.size(); ++j) {
      const auto& b = r.rows[j];
      if (b.cell.scenario != a.cell.scenario || b.cell.topology_index != a.cell.topology_index ||
          b.cell.distance != a.cell.distance || b.cell.frequency_hz != a.cell.frequency_hz)
        break;
      ext.push_back(static_cast<double>(b.metrics.propagation_extent));
      const auto d = b.metrics.molecular_delay;
      del.push_back(d ? *d : std::numeric_limits<double>::infinity());
      if (!d) ++never;
      gain.push_back(b.metrics.channel_gain_db);
    }
    json delay = quartile_json(del);
    delay["never_crossed"] = never;
    groups.push_back({{"scenario", std::string(to_string(a.cell.scenario))},
                      {"topology", a.topology},
                      {"distance_cells", a.cell.distance},
                      {"frequency_hz", a.cell.frequency_hz},
                      {"runs", j - i},
                      {"extent", quartile_json(ext)},
                      {"delay_s", delay},
                      {"gain_db", quartile_json(gain)}});
    i = j;
  }
  out["groups"] = groups;

  json errors = json::array();
  for (const auto& e : r.errors) {
    errors.push_back({{"scenario", std::string(to_string(e.cell.scenario))},
                      {"topology", e.topology},
                      {"distance_cells", e.cell.distance},
                      {"frequency_hz", e.cell.frequency_hz},
                      {"seed", e.cell.seed},
                      {"message", e.message}});
  }
  out["errors"] = errors;
  return out.dump(2) + "\n";
}

}  // namespace astronet
