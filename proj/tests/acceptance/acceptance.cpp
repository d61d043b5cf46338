// Acceptance checks. One criterion per invocation:
//
//   astronet_acceptance --criterion N [--matrix-dir DIR]
//   astronet_acceptance --prepare-matrix DIR
//
// Criteria 4 to 6 read the desk-scale matrix written by --prepare-matrix;
// criterion 8 reruns that matrix and compares bytes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "astronet/comms.hpp"
#include "astronet/config.hpp"
#include "astronet/engine.hpp"
#include "astronet/experiment.hpp"
#include "astronet/gap_junction.hpp"
#include "astronet/integrator.hpp"
#include "astronet/propensity_tree.hpp"
#include "astronet/topology.hpp"
#include "stats.hpp"

using namespace astronet;
namespace fs = std::filesystem;
namespace st = astronet::testing;

namespace {

const fs::path kDeskConfig = fs::path(ASTRONET_CONFIG_DIR) / "matrix_desk.json";

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated] ";
    }
    detail << what << "; ";
  }
};

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double uniform_open(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return 1.0 - u(rng);  // (0, 1]
}

// ---------------------------------------------------------------- 1

// Frozen propensities of a stimulated 3x3x1 four-pool tissue, so selection
// spans cell, edge and source channels with rates over several decades.
std::vector<double> frozen_propensities() {
  ScenarioConfig c;
  c.scenario = Scenario::Alzheimer;
  const NetworkParams np = c.network();
  Rng rng(7);
  const auto g = build_regular_degree({3, 3, 1}, 4, rng);
  TissueState ts;
  ts.cells.assign(g.cell_count(), resting_pools(Scenario::Alzheimer));
  ts.cells[4].ca = 3.0;
  ts.cells[4].ip3 = 1.2;
  ts.gating.assign(g.cell_count(), gating_steady_state(np.membrane_voltage));
  GjEdgeState e;
  e.probs = gj_stationary(np.junctional_voltage, np.model.gj);
  ts.edges.assign(g.edge_count(), e);
  ts.stimulus_rate = 700.0;
  ts.transmitter = 4;
  std::vector<double> a;
  for (const auto& r : build_propensities(ts, np, g)) a.push_back(r.propensity);
  return a;
}

Verdict criterion1() {
  Verdict v;
  const auto a = frozen_propensities();
  PropensityTree tree(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) tree.set(i, a[i]);
  const double a0 = tree.total();

  constexpr std::size_t kDraws = 1'000'000;
  Rng rng(20240601);
  std::vector<std::size_t> counts(a.size(), 0);
  std::vector<double> taus(kDraws);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < kDraws; ++k) {
    taus[k] = *sample_tau(a0, uniform_open(rng));
    const double rho2 = uniform_open(rng);
    const std::size_t u = *tree.find(rho2 * a0);
    if (u != *select_reaction(std::span<const double>(a), rho2)) ++mismatches;
    ++counts[u];
  }

  // Pool channels whose expected count is below 5 into one bin.
  std::vector<std::size_t> obs;
  std::vector<double> prob;
  std::size_t small_obs = 0;
  double small_prob = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] / a0;
    if (p * kDraws < 5.0) {
      small_obs += counts[i];
      small_prob += p;
    } else {
      obs.push_back(counts[i]);
      prob.push_back(p);
    }
  }
  if (small_prob > 0.0) {
    obs.push_back(small_obs);
    prob.push_back(small_prob);
  }
  const double x2 = st::chi2_statistic(obs, prob);
  const double crit = st::chi2_critical(static_cast<double>(obs.size() - 1), 0.01);
  const double d = st::ks_statistic(taus, [a0](double t) { return 1.0 - std::exp(-a0 * t); });
  const double p_ks = st::ks_pvalue(d, kDraws);

  v.require(x2 < crit, "chi2=" + num(x2) + " < crit(df=" + std::to_string(obs.size() - 1) + ")=" + num(crit));
  v.require(p_ks > 0.01, "KS p=" + num(p_ks));
  v.require(mismatches == 0, "tree vs linear scan mismatches=" + std::to_string(mismatches));
  return v;
}

// ---------------------------------------------------------------- 2

double ensemble_l2(double delta, const Trajectory<AdState>& det, std::size_t replicas, double t_end) {
  ScenarioConfig c;
  c.scenario = Scenario::Alzheimer;
  c.delta_quantum = delta;
  const NetworkParams np = c.network();
  const TissueGraph g({1, 1, 1});
  EngineOptions o;
  o.sim_time_max = t_end;
  o.snapshot_interval = 1.0;
  o.keep_events = false;
  o.initial_state = InitialState::RestingDefault;

  const std::size_t n = det.states.size();
  std::vector<std::array<double, 4>> mean(n, {0.0, 0.0, 0.0, 0.0});
  for (std::size_t r = 0; r < replicas; ++r) {
    Rng rng(replica_seed(1000, r));
    const auto log = simulate(g, np, StimulusSchedule{}, 0, 0, o, rng);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = log.snapshots.at(k).cells[0];
      mean[k][0] += x.ca, mean[k][1] += x.er, mean[k][2] += x.ip3, mean[k][3] += x.r;
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = det.states[k];
    const std::array<double, 4> ref{s.ca, s.er, s.ip3, s.r};
    for (int j = 0; j < 4; ++j) {
      const double diff = mean[k][j] / static_cast<double>(replicas) - ref[j];
      sum += diff * diff;
    }
  }
  return std::sqrt(sum / static_cast<double>(n));
}

Verdict criterion2() {
  Verdict v;
  constexpr double kT = 200.0;
  constexpr std::size_t kReplicas = 100;
  ScenarioConfig c;
  c.scenario = Scenario::Alzheimer;
  const NetworkParams np = c.network();

  const CellPools p0 = resting_pools(Scenario::Alzheimer);
  AdState s0;
  s0.ca = p0.ca, s0.er = p0.er, s0.ip3 = p0.ip3, s0.r = p0.r;
  s0.gating = gating_steady_state(np.membrane_voltage);
  CellInputs in;
  in.membrane_voltage = np.membrane_voltage;
  in.j_prod_rate = 0.5 * np.model.pools.o_beta / np.model.pools.t_k_mean +
                   0.5 * np.model.pools.o_delta / np.model.pools.v_n_mean;
  const auto det = integrate(s0, np.model.pools, np.model.vgcc, constant_inputs(in), {kT, 1e-3, 1000});

  std::vector<double> errs;
  for (double delta : {0.04, 0.01, 0.0025}) errs.push_back(ensemble_l2(delta, det, kReplicas, kT));
  v.require(errs[1] < errs[0] && errs[2] < errs[1],
            "L2(0.04)=" + num(errs[0]) + " > L2(0.01)=" + num(errs[1]) + " > L2(0.0025)=" + num(errs[2]));
  return v;
}

// ---------------------------------------------------------------- 3

Trajectory<AdState> ad_impulse_run(const ModelParams& p, double t_span, std::uint64_t seed) {
  Rng rng(seed);
  auto impulses = sample_j_prod(p.pools, t_span, rng);
  std::sort(impulses.begin(), impulses.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  // Each impulse is delivered as a 10 ms pulse of equal area.
  constexpr double kWidth = 0.01;
  const InputSchedule sched = [&impulses](double t) {
    CellInputs in;
    auto it = std::upper_bound(impulses.begin(), impulses.end(), t, [](double x, const ImpulseEvent& e) { return x < e.t; });
    while (it != impulses.begin()) {
      --it;
      if (t - it->t >= kWidth) break;
      in.j_prod_rate += it->amount / kWidth;
    }
    return in;
  };
  CellInputs rest;
  const AdState s0 = ad_equilibrium(p.pools, p.vgcc, rest);
  return integrate(s0, p.pools, p.vgcc, sched, {t_span, 1e-3, 10});
}

template <class State>
double cv_of(const Trajectory<State>& tr, double discard) {
  std::vector<double> t, ca;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    if (tr.t[k] < discard) continue;
    t.push_back(tr.t[k]);
    ca.push_back(tr.states[k].ca);
  }
  const auto [lo, hi] = std::minmax_element(ca.begin(), ca.end());
  return interpeak_cv(t, ca, 0.1 * (*hi - *lo));
}

Verdict criterion3() {
  Verdict v;
  const ModelParams hp = preset(Scenario::Healthy);
  const ModelParams ap = preset(Scenario::Alzheimer);
  constexpr double kDrivePoint = 0.05;

  std::vector<double> drives;
  for (int i = 1; i <= 20; ++i) drives.push_back(0.01 * i);
  const auto hs = scan_oscillations(CellModel::Healthy, hp, drives);
  const auto as = scan_oscillations(CellModel::Alzheimer, ap, drives);

  const auto at = scan_oscillations(CellModel::Healthy, hp, std::vector<double>{kDrivePoint});
  v.require(at[0].oscillating, "healthy oscillates at Sigma_p=0.05 (Ca " + num(at[0].ca_min) + ".." +
                                   num(at[0].ca_max) + " uM)");

  std::size_t narrower = 0;
  double worst = -INFINITY;
  for (std::size_t i = 0; i < drives.size(); ++i) {
    const double wh = hs[i].ca_max - hs[i].ca_min;
    const double wa = as[i].ca_max - as[i].ca_min;
    if (wa < wh) ++narrower;
    worst = std::max(worst, wa - wh);
  }
  v.require(narrower == drives.size(), "AD envelope narrower at " + std::to_string(narrower) + "/" +
                                           std::to_string(drives.size()) + " drives in [0.01, 0.2] (max AD-H width " +
                                           num(worst) + " uM)");

  HealthyParams h0 = hp.healthy;
  h0.sigma_p = 0.0;
  HealthyParams h = hp.healthy;
  h.sigma_p = kDrivePoint;
  const auto htr = integrate(healthy_equilibrium(h0), h, {1200.0, 1e-3, 100});
  const double cv_h = cv_of(htr, 200.0);
  const double cv_a = cv_of(ad_impulse_run(ap, 1200.0, 5), 200.0);
  v.require(std::isfinite(cv_a) && (!std::isfinite(cv_h) || cv_a > cv_h),
            "IPI CV AD=" + num(cv_a) + " > healthy=" + num(cv_h));
  return v;
}

// ---------------------------------------------------------------- 4-6

struct MatrixTable {
  // (scenario, topology kind) -> per-seed values
  std::map<std::pair<std::string, std::string>, std::vector<double>> extent, delay, gain;
};

std::string kind_of(const std::string& label) { return label.substr(0, label.find('(')); }

MatrixTable read_matrix(const fs::path& dir) {
  std::ifstream in(dir / "metrics.csv");
  if (!in) throw std::runtime_error("missing " + (dir / "metrics.csv").string() + "; run --prepare-matrix first");
  MatrixTable t;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    const auto key = std::make_pair(f.at(0), kind_of(f.at(1)));
    t.extent[key].push_back(std::stod(f.at(5)));
    t.delay[key].push_back(f.at(6).empty() ? INFINITY : std::stod(f.at(6)));
    t.gain[key].push_back(std::strtod(f.at(7).c_str(), nullptr));
  }
  return t;
}

const std::vector<std::string> kScenarios{"healthy", "alzheimer"};
const std::vector<std::string> kTopologies{"regular_degree", "link_radius", "shortcut", "erdos_renyi"};

Verdict criterion4(const MatrixTable& t) {
  Verdict v;
  for (const auto& s : kScenarios) {
    const auto& er = t.extent.at({s, "erdos_renyi"});
    for (const auto& k : kTopologies) {
      if (k == "erdos_renyi") continue;
      const auto& other = t.extent.at({s, k});
      const double p = st::mann_whitney_greater_p(er, other);
      v.require(st::median(er) > st::median(other) && p < 0.05,
                s + " ER median " + num(st::median(er)) + " > " + k + " " + num(st::median(other)) + " (p=" +
                    num(p, 3) + ")");
    }
  }
  const auto& ad = t.extent.at({"alzheimer", "erdos_renyi"});
  const auto& h = t.extent.at({"healthy", "erdos_renyi"});
  const double p = st::mann_whitney_greater_p(ad, h);
  v.require(st::median(ad) > st::median(h) && p < 0.05,
            "AD ER " + num(st::median(ad)) + " > healthy ER " + num(st::median(h)) + " (p=" + num(p, 3) + ")");
  return v;
}

Verdict criterion5(const MatrixTable& t) {
  Verdict v;
  std::map<std::string, double> ratio;
  for (const auto& k : kTopologies) {
    const double h = st::median(t.delay.at({"healthy", k}));
    const double a = st::median(t.delay.at({"alzheimer", k}));
    ratio[k] = a / h;
    v.require(a >= h, k + " delay AD " + num(a) + " s >= healthy " + num(h) + " s");
  }
  bool largest = std::isfinite(ratio["regular_degree"]);
  for (const auto& k : kTopologies)
    if (k != "regular_degree" && !(ratio["regular_degree"] > ratio[k])) largest = false;
  std::string ratios;
  for (const auto& k : kTopologies) ratios += k + "=" + num(ratio[k]) + " ";
  v.require(largest, "regular_degree has the largest AD/healthy delay ratio (" + ratios + ")");
  return v;
}

Verdict criterion6(const MatrixTable& t) {
  Verdict v;
  auto med = [&](const std::string& s, const std::string& k) { return st::median(t.gain.at({s, k})); };
  const double sc = med("healthy", "shortcut"), lr = med("healthy", "link_radius"), er = med("healthy", "erdos_renyi");
  v.require(sc - lr >= 3.0, "healthy gain shortcut " + num(sc) + " dB - link_radius " + num(lr) + " dB >= 3 dB");
  v.require(lr - er >= 3.0, "healthy gain link_radius " + num(lr) + " dB - erdos_renyi " + num(er) + " dB >= 3 dB");
  for (const auto& k : kTopologies) {
    const double a = med("alzheimer", k), h = med("healthy", k);
    v.require(a <= h, k + " gain AD " + num(a) + " dB <= healthy " + num(h) + " dB");
  }
  return v;
}

// ---------------------------------------------------------------- 7

Verdict criterion7() {
  Verdict v;
  const ModelParams hp = preset(Scenario::Healthy);
  const ModelParams ap = preset(Scenario::Alzheimer);
  Rng rng(77);
  std::uniform_real_distribution<double> volt(-100.0, 100.0), step(1e-4, 1.0), u01(0.0, 1.0);

  double worst_norm = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = u01(rng), b = u01(rng) * (1.0 - a);
    GjProbabilities p{a, b, 1.0 - a - b};
    for (int k = 0; k < 5; ++k) p = gj_step(p, volt(rng), step(rng), ap.gj);
    worst_norm = std::max(worst_norm, std::abs(p.p_hh + p.p_hl + p.p_lh - 1.0));
  }
  v.require(worst_norm <= 1e-9, "gap-junction normalization err " + num(worst_norm));

  {
    std::vector<double> vs(400);
    for (auto& x : vs) x = volt(rng);
    const InputSchedule sched = [&](double t) {
      return CellInputs{vs[std::min<std::size_t>(static_cast<std::size_t>(t / 0.05), vs.size() - 1)], 0.0, 0.0};
    };
    const auto tr = integrate(ad_resting_default(-70.0), ap.pools, ap.vgcc, sched, {20.0, 1e-3, 3});
    bool in_bounds = true;
    for (const auto& s : tr.states) {
      s.gating.for_each([&](double g) { in_bounds = in_bounds && g >= 0.0 && g <= 1.0; });
      in_bounds = in_bounds && s.r >= 0.0 && s.r <= 1.0;
    }
    v.require(in_bounds, "gating variables within [0, 1]");
  }

  {
    HealthyParams p = hp.healthy;
    p.sigma0 = 0.0;
    p.kappa_o = 0.0;
    const auto tr = integrate(HealthyState{0.2, 2.0, 0.3}, p, {100.0, 1e-3, 100});
    double drift = 0.0;
    for (const auto& s : tr.states) drift = std::max(drift, std::abs(s.ca + s.er - 2.2));
    v.require(drift <= 1e-6, "closed-cell Ca+Er drift over 100 s " + num(drift) + " uM");
  }

  {
    bool caps = true, repro = true;
    const LatticeDims dims{5, 5, 4};
    const CellId tx = cell_id(dims, {1, 2, 2}), rx = cell_id(dims, {3, 2, 2});
    const std::vector<TopologySpec> specs{RegularDegree{6}, LinkRadius{3.0, 6}, Shortcut{3, 6}, ErdosRenyi{0.3}};
    for (const auto& spec : specs) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng a(seed), b(seed);
        const auto g1 = build_topology(dims, spec, tx, rx, a);
        const auto g2 = build_topology(dims, spec, tx, rx, b);
        repro = repro && g1.edges() == g2.edges();
        // The tx-rx shortcut edge is the one allowed excess.
        const bool shortcut = std::holds_alternative<Shortcut>(spec);
        for (CellId c = 0; c < g1.cell_count(); ++c) {
          const int allowed = kMaxDegree + (shortcut && (c == tx || c == rx) && g1.has_edge(tx, rx) ? 1 : 0);
          caps = caps && g1.degree(c) <= allowed;
        }
      }
    }
    v.require(caps, "degree cap holds for all four builders (tx-rx shortcut excepted)");
    v.require(repro, "same seed gives the same graph for all four builders");
  }

  {
    ScenarioConfig c;
    c.lattice = {4, 4, 3};
    c.transmitter = {1, 1, 1};
    c.receiver = {3, 1, 1};
    c.sim_time_max = 3.0;
    c.stimulus = {StimulusKind::Burst, 0.0, 700.0, 1.0, 0.5};
    const auto tissue = c.network();
    Rng rng(3);
    const auto g = build_topology(c.lattice, c.topology, cell_id(c.lattice, c.transmitter),
                                  cell_id(c.lattice, c.receiver), rng);
    auto o = c.engine_options();
    const auto log = simulate(g, tissue, apply_stimulus(c.stimulus), cell_id(c.lattice, c.transmitter),
                              cell_id(c.lattice, c.receiver), o, rng);
    bool monotone = true;
    std::size_t prev = SIZE_MAX;
    for (double th = 0.0; th <= 2.0; th += 0.01) {
      const std::size_t e = propagation_extent(log, th, c.stimulus.start);
      monotone = monotone && e <= prev;
      prev = e;
    }
    v.require(monotone, "propagation extent non-increasing in threshold");
  }

  {
    bool same = true;
    std::size_t graphs = 0;
    for (int n = 1; n <= 4; ++n) {
      const LatticeDims dims{n, n, n};
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        const auto g = build_erdos_renyi(dims, 0.2, rng);
        const auto s = graph_stats(g, 0);
        // Brute force: breadth-first search from every cell.
        double total = 0.0, deg = 0.0;
        std::size_t pairs = 0;
        std::vector<std::size_t> sizes;
        std::vector<bool> seen(g.cell_count(), false);
        const auto from0 = bfs_distances(g, 0);
        for (CellId c = 0; c < g.cell_count(); ++c) {
          deg += g.degree(c);
          if (!seen[c]) {
            std::size_t size = 0;
            for (int d : bfs_distances(g, c)) size += d >= 0;
            const auto dist = bfs_distances(g, c);
            for (CellId x = 0; x < g.cell_count(); ++x)
              if (dist[x] >= 0) seen[x] = true;
            sizes.push_back(size);
          }
          if (from0[c] < 0) continue;
          const auto dist = bfs_distances(g, c);
          for (CellId x = c + 1; x < g.cell_count(); ++x)
            if (from0[x] >= 0) total += dist[x], ++pairs;
        }
        std::sort(sizes.rbegin(), sizes.rend());
        const double msp = pairs ? total / static_cast<double>(pairs) : 0.0;
        const double md = deg / static_cast<double>(g.cell_count());
        same = same && sizes == s.component_sizes && std::abs(md - s.mean_degree) < 1e-12 &&
               std::abs(msp - s.mean_shortest_path) < 1e-12;
        ++graphs;
      }
    }
    v.require(same, "graph stats match brute-force BFS on " + std::to_string(graphs) + " graphs up to 4x4x4");
  }
  return v;
}

// ---------------------------------------------------------------- 8

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> run_desk_matrix(unsigned threads) {
  const MatrixConfig m = load_matrix_config(kDeskConfig);
  MatrixRunOptions opt;
  opt.threads = threads;
  const auto r = run_experiment_matrix(m, opt);
  if (!r.errors.empty()) throw std::runtime_error("matrix run error: " + r.errors.front().message);
  std::ostringstream csv;
  write_matrix_csv(csv, r);
  return {csv.str(), matrix_summary_json(r)};
}

Verdict criterion8(const fs::path& dir) {
  Verdict v;
  const std::string first_csv = slurp(dir / "metrics.csv");
  const std::string first_json = slurp(dir / "summary.json");
  const auto [csv, json] = run_desk_matrix(2);
  v.require(!first_csv.empty() && csv == first_csv, "metrics.csv identical (" + std::to_string(csv.size()) + " bytes)");
  v.require(!first_json.empty() && json == first_json, "summary.json identical");
  return v;
}

int prepare(const fs::path& dir) {
  fs::create_directories(dir);
  const auto [csv, json] = run_desk_matrix(1);
  std::ofstream(dir / "metrics.csv", std::ios::binary) << csv;
  std::ofstream(dir / "summary.json", std::ios::binary) << json;
  std::cout << "desk matrix written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"astronet acceptance checks"};
  int criterion = 0;
  std::string matrix_dir = "acceptance_matrix";
  std::string prepare_dir;
  app.add_option("--criterion", criterion, "Criterion to check (1-8)")->check(CLI::Range(1, 8));
  app.add_option("--matrix-dir", matrix_dir, "Where the desk matrix results live");
  app.add_option("--prepare-matrix", prepare_dir, "Run the desk matrix and write it here");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!prepare_dir.empty()) return prepare(prepare_dir);
    if (criterion == 0) {
      std::cerr << "need --criterion or --prepare-matrix\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    switch (criterion) {
      case 1: v = criterion1(); break;
      case 2: v = criterion2(); break;
      case 3: v = criterion3(); break;
      case 4: v = criterion4(read_matrix(matrix_dir)); break;
      case 5: v = criterion5(read_matrix(matrix_dir)); break;
      case 6: v = criterion6(read_matrix(matrix_dir)); break;
      case 7: v = criterion7(); break;
      case 8: v = criterion8(matrix_dir); break;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << criterion << ": " << (v.pass ? "PASS" : "FAIL") << " " << v.detail.str() << "("
              << num(secs, 3) << " s)\n";
    return v.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "criterion " << criterion << ": FAIL error: " << e.what() << "\n";
    return 1;
  }
}
