#include "astronet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <ostream>

#include "astronet/errors.hpp"
#include "astronet/integrator.hpp"
#include "astronet/propensity_tree.hpp"
#include "astronet/single_cell.hpp"

namespace astronet {

std::string_view to_string(Pool p) {
  switch (p) {
    case Pool::Ca: return "Ca";
    case Pool::Er: return "Er";
    case Pool::Ip3: return "Ip3";
    case Pool::R: return "R";
  }
  return "?";
}

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::Influx: return "influx";
    case Channel::Efflux: return "efflux";
    case Channel::ErRelease: return "er_release";
    case Channel::Serca: return "serca";
    case Channel::ErLeak: return "er_leak";
    case Channel::Plc: return "plc";
    case Channel::Ip3Degradation: return "ip3_degradation";
    case Channel::Vgcc: return "vgcc";
    case Channel::Cce: return "cce";
    case Channel::Ionotropic: return "ionotropic";
    case Channel::Extrusion: return "extrusion";
    case Channel::AdErLeak: return "er_leak";
    case Channel::AdErRelease: return "er_release";
    case Channel::AdSerca: return "serca";
    case Channel::Ip3rRecovery: return "ip3r_recovery";
    case Channel::Ip3rInactivation: return "ip3r_inactivation";
    case Channel::AdIp3Degradation: return "ip3_degradation";
    case Channel::PlcBetaSynaptic: return "plc_beta_synaptic";
    case Channel::PlcDeltaSpontaneous: return "plc_delta_spontaneous";
    case Channel::CaGapHH: return "ca_gap_hh";
    case Channel::CaGapHL: return "ca_gap_hl";
    case Channel::CaGapLH: return "ca_gap_lh";
    case Channel::Ip3Gap: return "ip3_gap";
    case Channel::Stimulus: return "stimulus";
  }
  return "?";
}

std::string_view to_string(Termination t) { return t == Termination::TimeLimit ? "time_limit" : "quiescent"; }

std::size_t cell_channel_count(Scenario s) {
  return s == Scenario::Healthy ? kHealthyChannels : kAdChannels;
}

double ip3_gap_flux(double ip3_i, double ip3_j, const AdParams& p) {
  const double d = ip3_j - ip3_i;
  if (d == 0.0) return 0.0;
  const double mag = 0.5 * p.f_max * (1.0 + std::tanh((std::abs(d) - p.i_theta) / p.omega_i));
  return d > 0.0 ? -mag : mag;
}

CellPools resting_pools(Scenario scenario) {
  const auto h = healthy_resting_default();
  CellPools c{h.ca, h.er, h.ip3, 0.0};
  if (scenario == Scenario::Alzheimer) c.r = ad_resting_default(-70.0).r;
  return c;
}

namespace {

double mean_j_prod(const AdParams& p) {
  return 0.5 * p.o_beta / p.t_k_mean + 0.5 * p.o_delta / p.v_n_mean;
}

CellInputs inputs_for(const NetworkParams& np) {
  CellInputs in;
  in.membrane_voltage = np.membrane_voltage;
  in.j_prod_rate = mean_j_prod(np.model.pools);
  return in;
}

// Writes one reaction; `flux` is signed and the deltas follow its sign.
void set_reaction(Reaction& r, Channel ch, TargetKind kind, std::uint32_t target, double flux, double quantum,
                  std::initializer_list<PoolDelta> unit) {
  r.channel = ch;
  r.target_kind = kind;
  r.target = target;
  r.n_deltas = static_cast<std::uint8_t>(unit.size());
  const double sign = flux < 0.0 ? -1.0 : 1.0;
  std::size_t i = 0;
  for (const auto& d : unit) r.deltas[i++] = {d.cell, d.pool, sign * d.amount * quantum};
  r.propensity = std::abs(flux) / quantum;
}

void healthy_block(CellId c, const CellPools& x, const NetworkParams& np, const HealthyPowers& k, Reaction* out) {
  const auto f = healthy_fluxes({x.ca, x.er, x.ip3}, np.model.healthy, k);
  const double q = np.delta_quantum;
  const auto K = TargetKind::Cell;
  set_reaction(out[0], Channel::Influx, K, c, f.influx, q, {{c, Pool::Ca, 1.0}});
  set_reaction(out[1], Channel::Efflux, K, c, f.efflux, q, {{c, Pool::Ca, -1.0}});
  set_reaction(out[2], Channel::ErRelease, K, c, f.er_release, q, {{c, Pool::Ca, 1.0}, {c, Pool::Er, -1.0}});
  set_reaction(out[3], Channel::Serca, K, c, f.serca, q, {{c, Pool::Ca, -1.0}, {c, Pool::Er, 1.0}});
  set_reaction(out[4], Channel::ErLeak, K, c, f.er_leak, q, {{c, Pool::Ca, 1.0}, {c, Pool::Er, -1.0}});
  set_reaction(out[5], Channel::Plc, K, c, f.plc, q, {{c, Pool::Ip3, 1.0}});
  set_reaction(out[6], Channel::Ip3Degradation, K, c, f.ip3_deg, q, {{c, Pool::Ip3, -1.0}});
}

void ad_block(CellId c, const CellPools& x, const VgccGating& gates, const NetworkParams& np, Reaction* out) {
  const auto& p = np.model.pools;
  AdState s;
  s.ca = x.ca;
  s.er = x.er;
  s.ip3 = x.ip3;
  s.r = x.r;
  s.gating = gates;
  const CellInputs in = inputs_for(np);
  const auto f = ad_fluxes(s, p, in);
  const double j_vgcc = vgcc_flux(gates, np.membrane_voltage, x.ca, np.model.vgcc).j_vgcc;
  const double q = np.delta_quantum;
  const double b = p.beta;
  const auto K = TargetKind::Cell;
  set_reaction(out[0], Channel::Vgcc, K, c, j_vgcc, q, {{c, Pool::Ca, 1.0}});
  set_reaction(out[1], Channel::Cce, K, c, f.v_cce, q, {{c, Pool::Ca, 1.0}});
  set_reaction(out[2], Channel::Ionotropic, K, c, f.v_ir, q, {{c, Pool::Ca, 1.0}});
  set_reaction(out[3], Channel::Extrusion, K, c, f.v_out, q, {{c, Pool::Ca, -1.0}});
  set_reaction(out[4], Channel::AdErLeak, K, c, f.v_er_leak, q, {{c, Pool::Ca, 1.0}, {c, Pool::Er, -b}});
  set_reaction(out[5], Channel::AdErRelease, K, c, f.v_er_rel, q, {{c, Pool::Ca, 1.0}, {c, Pool::Er, -b}});
  set_reaction(out[6], Channel::AdSerca, K, c, f.v_serca, q, {{c, Pool::Ca, -1.0}, {c, Pool::Er, b}});
  set_reaction(out[7], Channel::Ip3rRecovery, K, c, ip3r_recovery(x.ca, p), np.r_quantum, {{c, Pool::R, 1.0}});
  set_reaction(out[8], Channel::Ip3rInactivation, K, c, ip3r_inactivation(x.r, p), np.r_quantum,
               {{c, Pool::R, -1.0}});
  set_reaction(out[9], Channel::AdIp3Degradation, K, c, p.k9 * x.ip3, q, {{c, Pool::Ip3, -1.0}});
  // Poisson impulses: unit propensity quantum, nominal size O; scaled by U(0,1) on firing.
  set_reaction(out[10], Channel::PlcBetaSynaptic, K, c, 1.0 / p.t_k_mean, 1.0, {{c, Pool::Ip3, p.o_beta}});
  set_reaction(out[11], Channel::PlcDeltaSpontaneous, K, c, 1.0 / p.v_n_mean, 1.0, {{c, Pool::Ip3, p.o_delta}});
  if (p.o_beta == 0.0) out[10].propensity = 0.0;
  if (p.o_delta == 0.0) out[11].propensity = 0.0;
}

void edge_block(EdgeId e, const Edge& ed, const CellPools& xa, const CellPools& xb, const GjEdgeState& gj,
                const NetworkParams& np, Reaction* out, bool ca = true, bool ip3 = true) {
  const double q = np.delta_quantum;
  const auto K = TargetKind::Edge;
  if (ca) {
    // Positive flux moves Ca from a to b.
    const double grad = np.diffusion_rate * (xa.ca - xb.ca);
    static constexpr Channel kCa[3] = {Channel::CaGapHH, Channel::CaGapHL, Channel::CaGapLH};
    static constexpr GjState kSt[3] = {GjState::HH, GjState::HL, GjState::LH};
    for (int s = 0; s < 3; ++s) {
      const double flux = grad * gj.probs[kSt[s]] * np.conductance_weights[s];
      set_reaction(out[s], kCa[s], K, e, flux, q, {{ed.a, Pool::Ca, -1.0}, {ed.b, Pool::Ca, 1.0}});
    }
  }
  if (ip3) {
    const double j = np.ip3_diffusion ? ip3_gap_flux(xa.ip3, xb.ip3, np.model.pools) : 0.0;
    set_reaction(out[3], Channel::Ip3Gap, K, e, j, q, {{ed.a, Pool::Ip3, -1.0}, {ed.b, Pool::Ip3, 1.0}});
  }
}

// Fixed reaction layout: cell blocks, then edge blocks, then the source.
struct Layout {
  std::size_t per_cell = 0;
  std::size_t cells = 0;
  std::size_t edges = 0;
  HealthyPowers powers;

  std::size_t cell_base(CellId c) const { return c * per_cell; }
  std::size_t edge_base(EdgeId e) const { return cells * per_cell + e * kEdgeChannels; }
  std::size_t stimulus() const { return cells * per_cell + edges * kEdgeChannels; }
  std::size_t size() const { return stimulus() + 1; }
};

Layout layout_for(const NetworkParams& np, const TissueGraph& g) {
  return {np.cell_reactions ? cell_channel_count(np.model.scenario) : 0, g.cell_count(), g.edge_count(),
          healthy_powers(np.model.healthy)};
}

void fill_cell(std::vector<Reaction>& all, const Layout& L, const TissueState& ts, const NetworkParams& np,
               CellId c) {
  if (L.per_cell == 0) return;
  Reaction* out = all.data() + L.cell_base(c);
  if (np.model.scenario == Scenario::Healthy) {
    healthy_block(c, ts.cells[c], np, L.powers, out);
  } else {
    ad_block(c, ts.cells[c], ts.gating[c], np, out);
  }
}

void fill_edge(std::vector<Reaction>& all, const Layout& L, const TissueState& ts, const NetworkParams& np,
               const TissueGraph& g, EdgeId e, bool ca = true, bool ip3 = true) {
  const auto& ed = g.edges()[e];
  edge_block(e, ed, ts.cells[ed.a], ts.cells[ed.b], ts.edges[e], np, all.data() + L.edge_base(e), ca, ip3);
}

void fill_stimulus(std::vector<Reaction>& all, const Layout& L, const TissueState& ts, const NetworkParams& np) {
  set_reaction(all[L.stimulus()], Channel::Stimulus, TargetKind::Transmitter, ts.transmitter, ts.stimulus_rate,
               np.delta_quantum, {{ts.transmitter, Pool::Ca, 1.0}});
}

std::vector<Reaction> full_layout(const TissueState& ts, const NetworkParams& np, const TissueGraph& g) {
  const Layout L = layout_for(np, g);
  std::vector<Reaction> all(L.size());
  for (CellId c = 0; c < L.cells; ++c) fill_cell(all, L, ts, np, c);
  for (EdgeId e = 0; e < L.edges; ++e) fill_edge(all, L, ts, np, g, e);
  fill_stimulus(all, L, ts, np);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<std::uint32_t>(i);
  return all;
}

double& pool_ref(CellPools& c, Pool p) {
  switch (p) {
    case Pool::Ca: return c.ca;
    case Pool::Er: return c.er;
    case Pool::Ip3: return c.ip3;
    case Pool::R: return c.r;
  }
  return c.ca;
}

double uniform_open(Rng& rng) {
  for (;;) {
    const double u = std::generate_canonical<double, 53>(rng);
    if (u > 0.0 && u < 1.0) return u;
  }
}

bool gates_at_rest(const VgccGating& g, double v) {
  const auto ss = gating_steady_state(v);
  bool same = true;
  double a[7], b[7];
  int i = 0;
  g.for_each([&](double x) { a[i++] = x; });
  i = 0;
  ss.for_each([&](double x) { b[i++] = x; });
  for (int k = 0; k < 7; ++k) same = same && std::abs(a[k] - b[k]) < 1e-12;
  return same;
}

bool junction_at_rest(const GjProbabilities& p, const GjProbabilities& ss) {
  return std::abs(p.p_hh - ss.p_hh) < 1e-12 && std::abs(p.p_hl - ss.p_hl) < 1e-12 &&
         std::abs(p.p_lh - ss.p_lh) < 1e-12;
}

}  // namespace

std::vector<Reaction> build_propensities(const TissueState& ts, const NetworkParams& np, const TissueGraph& g) {
  auto all = full_layout(ts, np, g);
  std::erase_if(all, [](const Reaction& r) { return !(r.propensity > 0.0); });
  return all;
}

std::optional<std::size_t> select_reaction(std::span<const double> a, double rho2) {
  double a0 = 0.0;
  for (double x : a) a0 += x;
  if (!(a0 > 0.0)) return std::nullopt;
  const double r = rho2 * a0;
  double cum = 0.0;
  std::optional<std::size_t> last;
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (!(a[u] > 0.0)) continue;
    cum += a[u];
    last = u;
    if (r <= cum) return u;
  }
  return last;  // r rounded past the final sum
}

std::optional<std::size_t> select_reaction(std::span<const Reaction> reactions, double rho2) {
  std::vector<double> a(reactions.size());
  std::transform(reactions.begin(), reactions.end(), a.begin(), [](const Reaction& r) { return r.propensity; });
  return select_reaction(std::span<const double>(a), rho2);
}

std::optional<double> sample_tau(double alpha0, double rho1) {
  if (!(alpha0 > 0.0)) return std::nullopt;
  return std::log(1.0 / rho1) / alpha0;
}

std::vector<ImpulseEvent> sample_j_prod(const AdParams& p, double window, Rng& rng) {
  std::vector<ImpulseEvent> out;
  auto stream = [&](double mean, double size, ImpulseSource src) {
    if (!(size > 0.0) || !(mean > 0.0)) return;
    std::exponential_distribution<double> gap(1.0 / mean);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double t = gap(rng); t < window; t += gap(rng)) out.push_back({t, size * u(rng), src});
  };
  stream(p.t_k_mean, p.o_beta, ImpulseSource::Synaptic);
  stream(p.v_n_mean, p.o_delta, ImpulseSource::Spontaneous);
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  return out;
}

CellPools initial_pools(const NetworkParams& np, InitialState init) {
  const Scenario sc = np.model.scenario;
  if (init == InitialState::RestingDefault) return resting_pools(sc);
  if (sc == Scenario::Healthy) {
    const auto e = healthy_equilibrium(np.model.healthy);
    return {e.ca, e.er, e.ip3, 0.0};
  }
  const auto e = ad_equilibrium(np.model.pools, np.model.vgcc, inputs_for(np));
  return {e.ca, e.er, e.ip3, e.r};
}

void apply_event(std::vector<CellPools>& cells, const ReactionEvent& e) {
  for (const auto& d : e.changes()) pool_ref(cells[d.cell], d.pool) += d.amount;
}

EventLog simulate(const TissueGraph& g, const NetworkParams& np, const StimulusSchedule& stimulus,
                  CellId transmitter, CellId receiver, const EngineOptions& opt, Rng& rng) {
  const Scenario sc = np.model.scenario;
  const std::size_t n_cells = g.cell_count();
  const double t_max = std::max(0.0, opt.sim_time_max);

  EventLog log;
  log.scenario = sc;
  log.cell_count = n_cells;
  log.transmitter = transmitter;
  log.receiver = receiver;
  log.delta_quantum = np.delta_quantum;
  log.stimulus = stimulus;

  TissueState ts;
  ts.cells.assign(n_cells, initial_pools(np, opt.initial_state));
  if (sc == Scenario::Alzheimer) ts.gating.assign(n_cells, gating_steady_state(np.membrane_voltage));
  const auto gj_ss = gj_stationary(np.junctional_voltage, np.model.gj);
  GjEdgeState gj0;
  gj0.v_j = np.junctional_voltage;
  gj0.probs = opt.junction_init == JunctionInit::Stationary ? gj_ss : GjProbabilities{};
  ts.edges.assign(g.edge_count(), gj0);
  ts.transmitter = transmitter;
  ts.stimulus_rate = stimulus.rate_at(0.0);

  const Layout L = layout_for(np, g);
  std::vector<Reaction> all = full_layout(ts, np, g);
  PropensityTree tree(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) tree.set(i, all[i].propensity);

  // Snapshots at k * interval; each holds the state just before the first
  // firing at or after its time.
  const std::size_t n_snap =
      opt.snapshot_interval > 0.0 ? static_cast<std::size_t>(std::floor(t_max / opt.snapshot_interval + 1e-9)) + 1
                                  : 1;
  std::size_t next_snap = 0;
  auto emit_snapshots_before = [&](double t, bool inclusive) {
    while (next_snap < n_snap) {
      const double ts_k = static_cast<double>(next_snap) * opt.snapshot_interval;
      if (next_snap > 0 && (inclusive ? ts_k > t : ts_k >= t)) break;
      log.snapshots.push_back({next_snap == 0 ? 0.0 : ts_k, ts.cells});
      ++next_snap;
    }
  };
  emit_snapshots_before(0.0, true);

  bool gates_active = sc == Scenario::Alzheimer &&
                      !std::all_of(ts.gating.begin(), ts.gating.end(),
                                   [&](const VgccGating& x) { return gates_at_rest(x, np.membrane_voltage); });
  bool junctions_active = std::any_of(ts.edges.begin(), ts.edges.end(),
                                      [&](const GjEdgeState& e) { return !junction_at_rest(e.probs, gj_ss); });
  const double substep = opt.substep > 0.0 ? opt.substep : 1e-3;
  double t_sub = 0.0;
  long sub_index = 0;

  auto refresh = [&](std::size_t i) { tree.set(i, all[i].propensity); };
  // Only edge channels whose pool changed need recomputing.
  auto refresh_cell = [&](CellId c, bool ca, bool ip3) {
    fill_cell(all, L, ts, np, c);
    for (std::size_t k = 0; k < L.per_cell; ++k) refresh(L.cell_base(c) + k);
    if (!ca && !ip3) return;
    for (EdgeId e : g.incident_edges(c)) {
      fill_edge(all, L, ts, np, g, e, ca, ip3);
      const std::size_t base = L.edge_base(e);
      if (ca)
        for (std::size_t k = 0; k < 3; ++k) refresh(base + k);
      if (ip3) refresh(base + 3);
    }
  };
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<std::uint32_t>(i);

  // Deterministic sub-systems catch up to `t`.
  auto advance_deterministic = [&](double t) {
    const double dt = t - t_sub;
    t_sub = t;
    if (dt <= 0.0) return;
    if (gates_active) {
      bool rest = true;
      for (CellId c = 0; c < n_cells; ++c) {
        ts.gating[c] = gating_relax(ts.gating[c], np.membrane_voltage, dt);
        rest = rest && gates_at_rest(ts.gating[c], np.membrane_voltage);
        fill_cell(all, L, ts, np, c);
        for (std::size_t k = 0; k < L.per_cell; ++k) refresh(L.cell_base(c) + k);
      }
      gates_active = !rest;
    }
    if (junctions_active) {
      bool rest = true;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        ts.edges[e].probs = gj_step(ts.edges[e].probs, ts.edges[e].v_j, dt, np.model.gj);
        rest = rest && junction_at_rest(ts.edges[e].probs, gj_ss);
        fill_edge(all, L, ts, np, g, e);
        for (std::size_t k = 0; k < kEdgeChannels; ++k) refresh(L.edge_base(e) + k);
      }
      junctions_active = !rest;
    }
  };

  auto handle_breakpoint = [&](double t) {
    ts.t = t;
    if (gates_active || junctions_active) advance_deterministic(t);
    const double rate = stimulus.rate_at(t);
    if (rate != ts.stimulus_rate) {
      ts.stimulus_rate = rate;
      fill_stimulus(all, L, ts, np);
      refresh(L.stimulus());
    }
  };

  const double inf = std::numeric_limits<double>::infinity();
  double t = 0.0;
  ReactionEvent ev;
  while (t < t_max) {
    const double next_stim = stimulus.next_change_after(t);
    const bool active = gates_active || junctions_active;
    double next_sub = inf;
    if (active) {
      next_sub = static_cast<double>(sub_index + 1) * substep;
      while (next_sub <= t) next_sub = static_cast<double>(++sub_index + 1) * substep;
    }
    const double bp = std::min({next_stim, next_sub, t_max});
    const double a0 = tree.total();

    if (!(a0 > 0.0)) {
      if (!active && !(next_stim < t_max)) {
        log.termination = Termination::Quiescent;
        break;
      }
      t = bp;
      if (bp == next_sub) ++sub_index;
      handle_breakpoint(t);
      continue;
    }

    const double tau = *sample_tau(a0, uniform_open(rng));
    if (t + tau >= bp) {
      // Memoryless: discard the pending firing and resample after the change.
      t = bp;
      if (bp == next_sub) ++sub_index;
      if (t < t_max) handle_breakpoint(t);
      continue;
    }
    const std::size_t u = *tree.find(uniform_open(rng) * a0);
    t += tau;
    emit_snapshots_before(t, false);
    ts.t = t;

    const Reaction& r = all[u];
    ev.t = t;
    ev.reaction_id = r.id;
    ev.channel = r.channel;
    ev.target = r.target;
    ev.n_deltas = r.n_deltas;
    ev.deltas = r.deltas;
    if (r.channel == Channel::PlcBetaSynaptic || r.channel == Channel::PlcDeltaSpontaneous) {
      ev.deltas[0].amount *= std::generate_canonical<double, 53>(rng);
    }
    // Trim a firing that would drive a pool negative; transfers stay balanced.
    double scale = 1.0;
    for (const auto& d : ev.changes()) {
      if (d.amount < 0.0) {
        const double have = pool_ref(ts.cells[d.cell], d.pool);
        if (have < -d.amount) scale = std::min(scale, std::max(0.0, have) / -d.amount);
      }
    }
    if (scale < 1.0) {
      ++log.clamp_count;
      for (std::size_t k = 0; k < ev.n_deltas; ++k) ev.deltas[k].amount *= scale;
    }
    apply_event(ts.cells, ev);
    for (const auto& d : ev.changes()) {
      double& x = pool_ref(ts.cells[d.cell], d.pool);
      if (!std::isfinite(x)) throw IntegrationDiverged(t);
      if (x < 0.0) x = 0.0;  // rounding residue after a trimmed firing
      if (d.pool == Pool::R && x > 1.0) x = 1.0;
    }

    ++log.total_events;
    if (opt.keep_events) log.events.push_back(ev);
    if (opt.on_event) opt.on_event(ev);

    const auto& d0 = ev.deltas[0];
    if (ev.n_deltas > 1 && ev.deltas[1].cell != d0.cell) {
      const auto& d1 = ev.deltas[1];
      refresh_cell(d0.cell, d0.pool == Pool::Ca, d0.pool == Pool::Ip3);
      refresh_cell(d1.cell, d1.pool == Pool::Ca, d1.pool == Pool::Ip3);
    } else {
      const bool ca = d0.pool == Pool::Ca || (ev.n_deltas > 1 && ev.deltas[1].pool == Pool::Ca);
      const bool ip3 = d0.pool == Pool::Ip3 || (ev.n_deltas > 1 && ev.deltas[1].pool == Pool::Ip3);
      refresh_cell(d0.cell, ca, ip3);
    }

    if (opt.verify_incremental) {
      const auto fresh = full_layout(ts, np, g);
      for (std::size_t i = 0; i < fresh.size(); ++i) {
        if (fresh[i].propensity != all[i].propensity || tree.value(i) != fresh[i].propensity) {
          throw std::logic_error("incremental propensity " + std::to_string(i) + " (" +
                                 std::string(to_string(fresh[i].channel)) + ") is stale after event " +
                                 std::to_string(log.total_events));
        }
      }
    }
  }

  log.t_end = std::min(std::max(t, 0.0), t_max);
  if (log.termination == Termination::Quiescent) log.t_end = t_max;
  emit_snapshots_before(t_max, true);
  return log;
}

void write_event_csv(std::ostream& os, const EventLog& log) {
  os << "t,reaction_id,target,pool,delta\n";
  os.precision(17);
  for (const auto& e : log.events) {
    for (const auto& d : e.changes()) {
      os << e.t << ',' << e.reaction_id << ',' << d.cell << ',' << to_string(d.pool) << ',' << d.amount << '\n';
    }
  }
}

void write_snapshot_csv(std::ostream& os, const EventLog& log) {
  const bool ad = log.scenario == Scenario::Alzheimer;
  os << (ad ? "t,cell_id,Ca,Er,Ip3,R\n" : "t,cell_id,Ca,Er,Ip3\n");
  os.precision(17);
  for (const auto& s : log.snapshots) {
    for (std::size_t c = 0; c < s.cells.size(); ++c) {
      const auto& x = s.cells[c];
      os << s.t << ',' << c << ',' << x.ca << ',' << x.er << ',' << x.ip3;
      if (ad) os << ',' << x.r;
      os << '\n';
    }
  }
}

}  // namespace astronet
