#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "astronet/config.hpp"
#include "astronet/engine.hpp"
#include "astronet/integrator.hpp"
#include "astronet/propensity_tree.hpp"
#include "astronet/topology.hpp"

using namespace astronet;

namespace {

void BM_TreeUpdateAndFind(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PropensityTree tree(n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) tree.set(i, u(rng));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (auto _ : state) {
    tree.set(pick(rng), u(rng));
    benchmark::DoNotOptimize(tree.find(u(rng) * tree.total()));
  }
}
BENCHMARK(BM_TreeUpdateAndFind)->RangeMultiplier(8)->Range(64, 32768);

void BM_LinearSelect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& x : a) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(select_reaction(std::span<const double>(a), u(rng)));
}
BENCHMARK(BM_LinearSelect)->RangeMultiplier(8)->Range(64, 32768);

void BM_BuildTopology(benchmark::State& state) {
  const LatticeDims dims{7, 7, 7};
  const std::vector<TopologySpec> specs{RegularDegree{6}, LinkRadius{3.0, 6}, Shortcut{5, 6}, ErdosRenyi{0.3}};
  const auto& spec = specs[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(topology_label(spec));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(build_topology(dims, spec, 0, 1, rng));
  }
}
BENCHMARK(BM_BuildTopology)->DenseRange(0, 3);

void BM_SimulateDeskRun(benchmark::State& state) {
  ScenarioConfig c;
  c.scenario = state.range(0) ? Scenario::Alzheimer : Scenario::Healthy;
  c.sim_time_max = 2.0;
  const auto np = c.network();
  auto opt = c.engine_options();
  opt.keep_events = false;
  const CellId tx = cell_id(c.lattice, c.transmitter), rx = cell_id(c.lattice, c.receiver);
  Rng grng(1);
  const auto g = build_topology(c.lattice, c.topology, tx, rx, grng);
  const auto stim = apply_stimulus(c.stimulus);
  std::uint64_t events = 0;
  for (auto _ : state) {
    Rng rng(2);
    events += simulate(g, np, stim, tx, rx, opt, rng).total_events;
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateDeskRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IntegrateFourPool(benchmark::State& state) {
  const ModelParams p = preset(Scenario::Alzheimer);
  const auto s0 = ad_resting_default(-70.0);
  const auto in = constant_inputs({-70.0, 0.0, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(integrate(s0, p.pools, p.vgcc, in, {10.0, 1e-3, 1000}));
}
BENCHMARK(BM_IntegrateFourPool)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
