#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "astronet/comms.hpp"
#include "astronet/config.hpp"
#include "astronet/errors.hpp"
#include "astronet/experiment.hpp"
#include "stats.hpp"

using namespace astronet;

namespace {

ReactionEvent ca_event(double t, Channel ch, std::uint32_t target, std::vector<PoolDelta> d) {
  ReactionEvent e;
  e.t = t;
  e.channel = ch;
  e.target = target;
  e.n_deltas = static_cast<std::uint8_t>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) e.deltas[i] = d[i];
  return e;
}

// tx = 0 sends `sent` quanta, of which `arrive` cross the 0-1 edge into rx = 1.
CommsProbe transfer_probe(int sent, int arrive) {
  const std::vector<CellPools> init(2, {0.1, 1.0, 0.1, 0.0});
  ProbeSettings s;
  s.stimulus_start = 1.0;
  s.gain_window = 1.0;
  CommsProbe p(init, 0, 1, s);
  double t = 1.0;
  for (int i = 0; i < sent; ++i) p.observe(ca_event(t += 1e-3, Channel::Stimulus, 0, {{0, Pool::Ca, 0.01}}));
  for (int i = 0; i < arrive; ++i)
    p.observe(ca_event(t += 1e-3, Channel::CaGapHH, 0, {{0, Pool::Ca, -0.01}, {1, Pool::Ca, 0.01}}));
  return p;
}

ScenarioConfig chain_config(std::uint64_t seed) {
  ScenarioConfig c;
  c.lattice = {8, 1, 1};
  c.topology = RegularDegree{6};
  c.transmitter = {0, 0, 0};
  c.receiver = {2, 0, 0};
  c.sim_time_max = 4.0;
  c.rng_seed = seed;
  c.stimulus = {StimulusKind::Burst, 0.0, 700.0, 1.0, 0.5};
  c.engine.snapshot_interval = 0.5;
  return c;
}

MatrixConfig small_matrix() {
  return parse_matrix_config(R"({
    "lattice": {"I": 4, "J": 3, "K": 1}, "transmitter": [0, 1, 0], "sim_time_max": 1.5,
    "stimulus": {"kind": "burst", "amplitude": 500, "duration": 0.5, "start": 0.25},
    "sweep": {"scenarios": ["healthy", "alzheimer"],
              "topologies": [{"kind": "regular_degree", "n": 6}, {"kind": "erdos_renyi", "p": 0.3}],
              "distances": [2], "frequencies": [0], "seeds": 2},
    "threshold_policy": {"mode": "calibrated", "control_runs": 2}})");
}

std::string csv_of(const MatrixResult& r) {
  std::ostringstream os;
  write_matrix_csv(os, r);
  return os.str();
}

}  // namespace

TEST_SUITE("comms") {
  TEST_CASE("zero amplitude schedules no source") {
    for (auto kind : {StimulusKind::Burst, StimulusKind::Square, StimulusKind::Sine}) {
      const auto s = apply_stimulus({kind, 2.0, 0.0, 3.0, 0.5});
      CHECK(s.on_phases() == 0);
      for (double t = 0.0; t < 5.0; t += 0.1) CHECK(s.rate_at(t) == 0.0);
    }
    ScenarioConfig c;
    c.lattice = {3, 3, 1};
    c.transmitter = {0, 1, 0};
    c.receiver = {2, 1, 0};
    c.sim_time_max = 1.5;
    c.stimulus.amplitude = 0.0;
    c.stimulus.start = 0.2;
    for (const auto& e : run(c).events) CHECK(e.channel != Channel::Stimulus);
  }

  TEST_CASE("square wave on-phases") {
    for (double f : {0.5, 2.0, 7.0}) {
      const auto s = apply_stimulus({StimulusKind::Square, f, 100.0, 10.0 / f, 0.3});
      CHECK(s.on_phases() == 10);
      CHECK(s.rate_at(0.3) == 100.0);
      CHECK(s.rate_at(0.3 + 0.75 / f) == 0.0);
      CHECK(s.rate_at(0.3 + 10.0 / f + 0.1) == 0.0);
    }
    const auto burst = apply_stimulus({StimulusKind::Burst, 0.0, 80.0, 1.0, 2.0});
    CHECK(burst.on_phases() == 1);
    CHECK(burst.rate_at(1.99) == 0.0);
    CHECK(burst.rate_at(2.5) == 80.0);
    CHECK(burst.next_change_after(2.0) == 3.0);
    const auto sine = apply_stimulus({StimulusKind::Sine, 1.0, 100.0, 1.0, 0.0});
    CHECK(sine.rate_at(0.25) == doctest::Approx(100.0).epsilon(1e-3));
    CHECK(sine.rate_at(0.75) == doctest::Approx(0.0).epsilon(1e-3));
  }

  TEST_CASE("burst raises the transmitter above its unstimulated twin") {
    for (Scenario sc : {Scenario::Healthy, Scenario::Alzheimer}) {
      auto c = chain_config(11);
      c.scenario = sc;
      c.sim_time_max = 1.5;
      c.engine.snapshot_interval = 1.5;  // snapshot at burst end
      auto quiet = c;
      quiet.stimulus.amplitude = 0.0;
      const auto a = run(c), b = run(quiet);
      const CellId tx = cell_id(c.lattice, c.transmitter);
      CHECK(a.snapshots.back().cells[tx].ca > b.snapshots.back().cells[tx].ca);
    }
  }

  TEST_CASE("edgeless tissue activates only the transmitter") {
    std::vector<CellPools> init(4, {0.1, 1.0, 0.1, 0.0});
    ProbeSettings s;
    s.activation_threshold = 0.05;
    CommsProbe p(init, 2, 3, s);
    for (int i = 0; i < 20; ++i)
      p.observe(ca_event(0.01 * (i + 1), Channel::Stimulus, 2, {{2, Pool::Ca, 0.01}}));
    CHECK(p.extent(0.05) == 1);
    CHECK_FALSE(p.delay().has_value());

    ScenarioConfig c;
    c.lattice = {3, 3, 1};
    c.topology = RegularDegree{6};
    c.transmitter = {1, 1, 0};
    c.receiver = {2, 1, 0};
    c.sim_time_max = 1.0;
    c.stimulus = {StimulusKind::Burst, 0.0, 300.0, 0.5, 0.0};
    c.diffusion.coefficient = 0.0;
    c.engine.cell_reactions = false;
    const auto log = run(c);
    CHECK(propagation_extent(log, 0.05, 0.0) == 1);
  }

  TEST_CASE("raising the threshold never raises the extent") {
    auto c = chain_config(3);
    c.lattice = {5, 5, 1};
    c.transmitter = {2, 2, 0};
    c.receiver = {4, 2, 0};
    const auto log = run(c);
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double th = 0.0; th <= 2.0; th += 0.05) {
      const auto n = propagation_extent(log, th, c.stimulus.start);
      CHECK(n <= prev);
      prev = n;
    }
  }

  TEST_CASE("delay sentinel and degenerate receiver") {
    std::vector<CellPools> init(3, {0.1, 1.0, 0.1, 0.0});
    ProbeSettings s;
    s.stimulus_start = 1.0;
    CommsProbe far(init, 0, 2, s);
    CommsProbe self(init, 0, 0, s);
    for (int i = 0; i < 10; ++i) {
      const auto e = ca_event(1.0 + 0.1 * (i + 1), Channel::Stimulus, 0, {{0, Pool::Ca, 0.01}});
      far.observe(e);
      self.observe(e);
    }
    CHECK_FALSE(far.delay().has_value());
    CHECK(format_delay(far.delay()).empty());
    REQUIRE(self.delay().has_value());
    // Crossing 0.05 takes five quanta.
    CHECK(*self.delay() == doctest::Approx(0.5));
    CHECK(format_delay(0.25) == "0.25");
  }

  TEST_CASE("median delay grows with distance along a chain") {
    std::vector<double> d2, d4, d6;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto c = chain_config(seed);
      const auto log = run(c);
      auto delay = [&](int i) {
        const auto d = molecular_delay(log, 0, static_cast<CellId>(i), c.activation_threshold, c.stimulus.start);
        return d ? *d : std::numeric_limits<double>::infinity();
      };
      d2.push_back(delay(2));
      d4.push_back(delay(4));
      d6.push_back(delay(6));
    }
    const double m2 = testing::median(d2), m4 = testing::median(d4), m6 = testing::median(d6);
    CHECK(std::isfinite(m2));
    CHECK(m2 <= m4);
    CHECK(m4 <= m6);
  }

  TEST_CASE("gain arithmetic") {
    CHECK(transfer_probe(10, 10).gain_db() == doctest::Approx(0.0));
    CHECK(transfer_probe(100, 10).gain_db() == doctest::Approx(-10.0));
    CHECK(transfer_probe(10, 0).gain_db() == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(transfer_probe(0, 0).gain_db(), UndefinedGain);
    CHECK(transfer_probe(40, 4).received() == doctest::Approx(0.04));
  }

  TEST_CASE("gain counts only in-window edge arrivals") {
    std::vector<CellPools> init(2, {0.1, 1.0, 0.1, 0.0});
    ProbeSettings s;
    s.stimulus_start = 1.0;
    s.gain_window = 0.5;
    CommsProbe p(init, 0, 1, s);
    p.observe(ca_event(0.5, Channel::Stimulus, 0, {{0, Pool::Ca, 0.01}}));  // before the window
    p.observe(ca_event(1.1, Channel::Stimulus, 0, {{0, Pool::Ca, 0.01}}));
    p.observe(ca_event(1.2, Channel::Stimulus, 0, {{0, Pool::Ca, 0.01}}));
    p.observe(ca_event(1.3, Channel::Plc, 1, {{1, Pool::Ca, 0.01}}));  // own production
    p.observe(ca_event(1.3, Channel::CaGapHL, 0, {{0, Pool::Ca, -0.01}, {1, Pool::Ca, 0.01}}));
    p.observe(ca_event(1.7, Channel::CaGapHH, 0, {{0, Pool::Ca, -0.01}, {1, Pool::Ca, 0.01}}));  // after
    CHECK(p.sent() == doctest::Approx(0.02));
    CHECK(p.received() == doctest::Approx(0.01));
    CHECK(p.gain_db() == doctest::Approx(10.0 * std::log10(0.5)));
  }

  TEST_CASE("metrics do not depend on cell labels") {
    // One synthetic stream, replayed under a permutation of cell ids.
    const std::vector<CellId> perm{3, 0, 4, 1, 2};
    std::vector<CellPools> init{{0.1, 1, 0, 0}, {0.2, 1, 0, 0}, {0.15, 1, 0, 0}, {0.1, 1, 0, 0}, {0.3, 1, 0, 0}};
    std::vector<ReactionEvent> events;
    double t = 0.0;
    for (int i = 0; i < 300; ++i) {
      const CellId a = static_cast<CellId>(i % 5), b = static_cast<CellId>((i * 3 + 1) % 5);
      if (a == b) continue;
      events.push_back(ca_event(t += 0.01, i % 4 ? Channel::CaGapHH : Channel::Stimulus, a,
                                {{a, Pool::Ca, (i % 7 < 3 ? -0.01 : 0.01)}, {b, Pool::Ca, 0.01}}));
    }
    std::vector<CellPools> pinit(init.size());
    for (CellId c = 0; c < init.size(); ++c) pinit[perm[c]] = init[c];
    ProbeSettings s;
    s.stimulus_start = 0.5;
    s.gain_window = 2.0;
    CommsProbe p(init, 0, 2, s), q(pinit, perm[0], perm[2], s);
    for (auto e : events) {
      p.observe(e);
      for (std::size_t k = 0; k < e.n_deltas; ++k) e.deltas[k].cell = perm[e.deltas[k].cell];
      e.target = perm[e.target];
      q.observe(e);
    }
    for (double th : {0.0, 0.05, 0.2, 0.5}) CHECK(p.extent(th) == q.extent(th));
    CHECK(p.delay() == q.delay());
    CHECK(p.gain_db() == q.gain_db());
  }

  TEST_CASE("streamed and replayed metrics agree") {
    auto c = chain_config(5);
    c.engine.snapshot_interval = 0.1;
    const auto log = run(c);
    const CellId tx = cell_id(c.lattice, c.transmitter), rx = cell_id(c.lattice, c.receiver);
    const auto m = measure(c);
    CHECK(m.propagation_extent == propagation_extent(log, c.activation_threshold, c.stimulus.start));
    CHECK(m.molecular_delay == molecular_delay(log, tx, rx, c.activation_threshold, c.stimulus.start));
    CHECK(m.channel_gain_db == channel_gain(log, tx, rx, c.window(), c.stimulus.start));
    CHECK(m.channel_gain_db <= 0.0);
  }

  TEST_CASE("quartiles") {
    const auto q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(q.q1 == 2.0);
    CHECK(q.median == 3.0);
    CHECK(q.q3 == 4.0);
    const auto e = quartiles({1.0, 2.0});
    CHECK(e.median == 1.5);
    const double inf = std::numeric_limits<double>::infinity();
    const auto i = quartiles({1.0, inf, inf, 2.0});
    CHECK(i.q1 == doctest::Approx(1.75));
    CHECK(i.median == inf);
    CHECK(std::isnan(quartiles({}).median));
  }

  TEST_CASE("single-cell matrix yields one row") {
    auto m = small_matrix();
    m.sweep.scenarios = {Scenario::Healthy};
    m.sweep.topologies = {RegularDegree{6}};
    m.sweep.seeds = {7};
    m.threshold.calibrated = false;
    const auto r = run_experiment_matrix(m);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.errors.empty());
    CHECK(r.rows[0].cell.seed == 7);
    CHECK(r.rows[0].threshold == m.base.activation_threshold);
    const auto csv = csv_of(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  }

  TEST_CASE("matrix output is reproducible and thread-count independent") {
    const auto m = small_matrix();
    const auto a = run_experiment_matrix(m);
    MatrixRunOptions opt;
    opt.threads = 3;
    std::size_t calls = 0;
    opt.on_progress = [&](std::size_t done, std::size_t total) {
      ++calls;
      CHECK(done <= total);
    };
    const auto b = run_experiment_matrix(m, opt);
    CHECK(a.rows.size() == 8);
    CHECK(calls == 8);
    CHECK(csv_of(a) == csv_of(b));
    CHECK(matrix_summary_json(a) == matrix_summary_json(b));
    CHECK(a.thresholds.at(Scenario::Healthy) >= m.threshold.floor);
    CHECK(a.thresholds == b.thresholds);
  }

  TEST_CASE("failing cells are collected, not thrown") {
    auto m = small_matrix();
    m.sweep.distances = {2, 9};
    m.sweep.scenarios = {Scenario::Healthy};
    m.sweep.topologies = {RegularDegree{6}};
    m.threshold.calibrated = false;
    const auto r = run_experiment_matrix(m);
    CHECK(r.rows.size() == 2);
    REQUIRE(r.errors.size() == 2);
    CHECK(r.errors[0].cell.distance == 9);
    const auto js = nlohmann::json::parse(matrix_summary_json(r));
    CHECK(js["errors"].size() == 2);
    CHECK(js["groups"].size() == 1);
  }

  TEST_CASE("summary encodes never-crossed delays as null") {
    MatrixResult r;
    MatrixRow row;
    row.topology = "regular_degree";
    row.metrics.propagation_extent = 3;
    row.metrics.channel_gain_db = -20.0;
    r.rows = {row, row};
    const auto js = nlohmann::json::parse(matrix_summary_json(r));
    CHECK(js["groups"][0]["delay_s"]["median"].is_null());
    CHECK(js["groups"][0]["delay_s"]["never_crossed"] == 2);
    CHECK(js["groups"][0]["gain_db"]["median"] == -20.0);
    std::ostringstream os;
    write_matrix_csv(os, r);
    CHECK(os.str().find("healthy,regular_degree,1,0,0,3,,-20\n") != std::string::npos);
  }
}
