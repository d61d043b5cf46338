#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "astronet/comms.hpp"
#include "astronet/config.hpp"
#include "astronet/errors.hpp"
#include "astronet/experiment.hpp"
#include "astronet/format.hpp"
#include "astronet/integrator.hpp"
#include "astronet/progress.hpp"
#include "astronet/version.hpp"

namespace astronet::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t replicas = 1;
  unsigned threads = 1;
  bool quiet = false;
  double progress_interval = 5.0;
};

struct RunOpts {
  bool events = false;
};

struct ScanOpts {
  double from = 0.0;
  double to = 0.1;
  std::size_t steps = 21;
  double t_span = 400.0;
  std::optional<double> trajectory_drive;
};

// A usage problem detected after CLI11 parsing; exits 1 like a config error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes via a temporary file in the same directory, then renames.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

fs::path prepare_out(const std::string& out) {
  if (out.empty()) throw UsageError("--out is required");
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_matrix(const std::string& text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  return j.is_object() && j.contains("sweep");
}

ScenarioConfig load_scenario(const Common& o) {
  if (o.config.empty()) throw UsageError("--config is required");
  ScenarioConfig c = load_config(o.config);
  if (o.seed) c.rng_seed = *o.seed;
  return c;
}

void write_manifest(const fs::path& dir, const std::string& command, const std::string& canonical,
                    std::uint64_t seed, const Common& o, const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["tool"] = "astronet";
  m["version"] = kVersion;
  m["command"] = command;
  m["config_file"] = "config.json";
  m["config_hash"] = config_hash(canonical);
  m["rng_seed"] = seed;
  m["replicas"] = o.replicas;
  m["outputs"] = outputs;
  write_atomic(dir / "run_manifest.json", m.dump(2) + "\n");
}

std::string suffixed(const std::string& stem, std::size_t r, std::size_t n) {
  return n == 1 ? stem + ".csv" : stem + "_r" + std::to_string(r) + ".csv";
}

int cmd_run(const Common& o, const RunOpts& ro, std::ostream& err) {
  const ScenarioConfig base = load_scenario(o);
  const fs::path dir = prepare_out(o.out);
  const std::size_t n = o.replicas;

  struct Output {
    MatrixRow row;
    std::string snapshots;
    std::string events;
  };
  std::vector<Output> outs(n);
  const CellId tx = cell_id(base.lattice, base.transmitter);
  const CellId rx = cell_id(base.lattice, base.receiver);
  const int manhattan = std::abs(base.receiver.i - base.transmitter.i) +
                        std::abs(base.receiver.j - base.transmitter.j) +
                        std::abs(base.receiver.k - base.transmitter.k);

  auto one = [&](std::size_t r, ProgressReporter* progress) {
    ScenarioConfig c = base;
    c.rng_seed = replica_seed(base.rng_seed, r);
    EngineOptions opt = c.engine_options();
    opt.keep_events = ro.events;

    ProbeSettings ps;
    ps.activation_threshold = c.activation_threshold;
    ps.stimulus_start = c.stimulus.start;
    ps.gain_window = c.window();
    const NetworkParams np = c.network();
    Rng rng(c.rng_seed);
    const TissueGraph g = build_graph(c, rng);
    const std::vector<CellPools> init(g.cell_count(), initial_pools(np, opt.initial_state));
    CommsProbe probe(init, tx, rx, ps);
    std::uint64_t count = 0;
    opt.on_event = [&](const ReactionEvent& e) {
      probe.observe(e);
      ++count;
      if (progress) progress->update(e.t, count);
    };
    const EventLog log = simulate(g, np, apply_stimulus(c.stimulus), tx, rx, opt, rng);
    if (progress) progress->finish(log.t_end, log.total_events);

    Output& out = outs[r];
    out.row.cell = {c.scenario, 0, manhattan, c.stimulus.frequency_hz, c.rng_seed};
    out.row.topology = topology_label(c.topology);
    out.row.threshold = c.activation_threshold;
    out.row.events = log.total_events;
    out.row.metrics.propagation_extent = probe.extent(c.activation_threshold);
    out.row.metrics.molecular_delay = probe.delay();
    out.row.metrics.channel_gain_db = probe.sent() > 0.0 ? probe.gain_db()
                                                         : std::numeric_limits<double>::quiet_NaN();
    std::ostringstream snap;
    write_snapshot_csv(snap, log);
    out.snapshots = snap.str();
    if (ro.events) {
      std::ostringstream ev;
      write_event_csv(ev, log);
      out.events = ev.str();
    }
  };

  if (n == 1 || o.threads <= 1) {
    for (std::size_t r = 0; r < n; ++r) {
      ProgressReporter progress(err, o.progress_interval, o.quiet, n == 1 ? "run" : "replica " + std::to_string(r));
      one(r, &progress);
    }
  } else {
    std::mutex mu;
    std::size_t next = 0, done = 0;
    ProgressReporter progress(err, o.progress_interval, o.quiet, "run");
    auto worker = [&] {
      for (;;) {
        std::size_t r;
        {
          std::lock_guard lk(mu);
          if (next >= n) return;
          r = next++;
        }
        one(r, nullptr);
        std::lock_guard lk(mu);
        progress.update_runs(++done, n);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(o.threads, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> written;
  MatrixResult table;
  for (std::size_t r = 0; r < n; ++r) {
    table.rows.push_back(outs[r].row);
    write_atomic(dir / suffixed("snapshots", r, n), outs[r].snapshots);
    written.push_back(suffixed("snapshots", r, n));
    if (ro.events) {
      write_atomic(dir / suffixed("events", r, n), outs[r].events);
      written.push_back(suffixed("events", r, n));
    }
  }
  std::ostringstream metrics;
  write_matrix_csv(metrics, table);
  write_atomic(dir / "metrics.csv", metrics.str());
  written.push_back("metrics.csv");

  const std::string canonical = serialize(base);
  write_atomic(dir / "config.json", canonical);
  write_manifest(dir, "run", canonical, base.rng_seed, o, written);
  return 0;
}

int cmd_scan(const Common& o, const ScanOpts& so) {
  const ScenarioConfig c = load_scenario(o);
  if (so.steps < 2) throw UsageError("--steps must be >= 2");
  if (!(so.to > so.from)) throw UsageError("--to must exceed --from");
  if (!(so.t_span > 0.0)) throw UsageError("--t-span must be > 0");
  const fs::path dir = prepare_out(o.out);

  const ModelParams p = c.model();
  const CellModel model = c.scenario == Scenario::Healthy ? CellModel::Healthy : CellModel::Alzheimer;
  std::vector<double> drives(so.steps);
  for (std::size_t i = 0; i < so.steps; ++i)
    drives[i] = so.from + (so.to - so.from) * static_cast<double>(i) / static_cast<double>(so.steps - 1);
  ScanOptions sopt;
  sopt.t_span = so.t_span;
  sopt.membrane_voltage = c.membrane_voltage_mv;
  const auto points = scan_oscillations(model, p, drives, sopt);

  std::vector<std::string> written{"scan.csv"};
  std::ostringstream scan;
  write_scan_csv(scan, points);
  write_atomic(dir / "scan.csv", scan.str());

  if (so.trajectory_drive) {
    std::ostringstream tr;
    const IntegrateOptions iopt{so.t_span, sopt.dt, 10};
    if (model == CellModel::Healthy) {
      HealthyParams h0 = p.healthy;
      h0.sigma_p = 0.0;
      HealthyParams hp = p.healthy;
      hp.sigma_p = *so.trajectory_drive;
      write_trajectory_csv(tr, integrate(healthy_equilibrium(h0), hp, iopt));
    } else {
      CellInputs in;
      in.membrane_voltage = c.membrane_voltage_mv;
      const AdState s0 = ad_equilibrium(p.pools, p.vgcc, in);
      in.j_prod_rate = *so.trajectory_drive;
      write_trajectory_csv(tr, integrate(s0, p.pools, p.vgcc, constant_inputs(in), iopt));
    }
    write_atomic(dir / "trajectory.csv", tr.str());
    written.push_back("trajectory.csv");
  }

  const std::string canonical = serialize(c);
  write_atomic(dir / "config.json", canonical);
  write_manifest(dir, "scan", canonical, c.rng_seed, o, written);
  return 0;
}

int cmd_topo(const Common& o) {
  const ScenarioConfig c = load_scenario(o);
  const fs::path dir = prepare_out(o.out);
  Rng rng(c.rng_seed);
  const TissueGraph g = build_graph(c, rng);

  std::ostringstream edges;
  write_edge_list(edges, g);
  write_atomic(dir / "edges.txt", edges.str());
  write_atomic(dir / "stats.json", stats_json(graph_stats(g, cell_id(c.lattice, c.transmitter))));

  const std::string canonical = serialize(c);
  write_atomic(dir / "config.json", canonical);
  write_manifest(dir, "topo", canonical, c.rng_seed, o, {"edges.txt", "stats.json"});
  return 0;
}

int cmd_matrix(const Common& o, std::ostream& err) {
  if (o.config.empty()) throw UsageError("--config is required");
  MatrixConfig m = load_matrix_config(o.config);
  if (o.seed || o.replicas > 1) {
    // Explicit seeding regenerates the seed list from the base seed.
    if (o.seed) m.base.rng_seed = *o.seed;
    const std::size_t n = o.replicas > 1 ? o.replicas : m.sweep.seeds.size();
    m.sweep.seeds.clear();
    for (std::size_t r = 0; r < n; ++r) m.sweep.seeds.push_back(replica_seed(m.base.rng_seed, r));
  }
  const fs::path dir = prepare_out(o.out);

  ProgressReporter progress(err, o.progress_interval, o.quiet, "matrix");
  MatrixRunOptions ro;
  ro.threads = o.threads;
  ro.on_progress = [&](std::size_t done, std::size_t total) { progress.update_runs(done, total); };
  const MatrixResult r = run_experiment_matrix(m, ro);

  std::ostringstream csv;
  write_matrix_csv(csv, r);
  write_atomic(dir / "metrics.csv", csv.str());
  write_atomic(dir / "summary.json", matrix_summary_json(r));

  const std::string canonical = serialize(m);
  write_atomic(dir / "config.json", canonical);
  write_manifest(dir, "matrix", canonical, m.base.rng_seed, o, {"metrics.csv", "summary.json"});
  if (!r.errors.empty() && !o.quiet) {
    err << "matrix: " << r.errors.size() << " of " << enumerate_cells(m).size()
        << " runs failed; see summary.json\n";
  }
  return r.errors.empty() ? 0 : 2;
}

int cmd_validate(const Common& o, std::ostream& out) {
  if (o.config.empty()) throw UsageError("--config is required");
  const std::string text = read_text(o.config);
  if (looks_like_matrix(text)) {
    const auto m = parse_matrix_config(text, o.config);
    out << "ok: matrix config, " << enumerate_cells(m).size() << " runs\n";
  } else {
    parse_config(text, o.config);
    out << "ok: scenario config\n";
  }
  return 0;
}

void add_common(CLI::App* sub, Common& o, bool needs_out) {
  sub->add_option("--config", o.config, "Config file (JSON)")->required();
  if (needs_out) sub->add_option("--out", o.out, "Output directory")->required();
  sub->add_option("--seed", o.seed, "Override rng_seed");
  sub->add_option("--replicas", o.replicas, "Independent replicas (seeds derived from the base seed)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--quiet,-q", o.quiet, "No status lines");
  sub->add_option("--progress-interval", o.progress_interval, "Seconds between status lines; 0 disables")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic astrocyte calcium network simulator", "astronet"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common o;
  RunOpts ro;
  ScanOpts so;

  auto* run = app.add_subcommand("run", "Simulate one scenario and report link metrics");
  add_common(run, o, true);
  run->add_flag("--events", ro.events, "Also write the full event log");

  auto* scan = app.add_subcommand("scan", "Single-cell oscillation scan over a drive range");
  add_common(scan, o, true);
  scan->add_option("--from", so.from, "First drive value");
  scan->add_option("--to", so.to, "Last drive value");
  scan->add_option("--steps", so.steps, "Number of drive points");
  scan->add_option("--t-span", so.t_span, "Seconds simulated per drive point");
  scan->add_option("--trajectory", so.trajectory_drive, "Also write the trajectory at this drive");

  auto* topo = app.add_subcommand("topo", "Build the configured graph and export edges and statistics");
  add_common(topo, o, true);

  auto* matrix = app.add_subcommand("matrix", "Run an experiment matrix");
  add_common(matrix, o, true);

  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running anything");
  add_common(validate_cmd, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(o, ro, err);
    if (*scan) return cmd_scan(o, so);
    if (*topo) return cmd_topo(o);
    if (*matrix) return cmd_matrix(o, err);
    return cmd_validate(o, out);
  } catch (const ConfigError& e) {
    err << "astronet: config error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "astronet: usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "astronet: error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace astronet::cli
