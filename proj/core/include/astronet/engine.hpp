#pragma once

// Stochastic tissue simulator: Gillespie direct method over per-cell flux
// reactions, gap-junction diffusion reactions and the transmitter source.
// VGCC gates and junction probabilities are deterministic and advanced between
// firings.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "astronet/gap_junction.hpp"
#include "astronet/params.hpp"
#include "astronet/stimulus.hpp"
#include "astronet/topology.hpp"
#include "astronet/vgcc.hpp"

namespace astronet {

enum class Pool : std::uint8_t { Ca, Er, Ip3, R };

std::string_view to_string(Pool p);

/// Every reaction kind. Cell channels come first, in layout order per scenario.
enum class Channel : std::uint8_t {
  // three-pool cell
  Influx,
  Efflux,
  ErRelease,
  Serca,
  ErLeak,
  Plc,
  Ip3Degradation,
  // four-pool cell
  Vgcc,
  Cce,
  Ionotropic,
  Extrusion,
  AdErLeak,
  AdErRelease,
  AdSerca,
  Ip3rRecovery,
  Ip3rInactivation,
  AdIp3Degradation,
  PlcBetaSynaptic,
  PlcDeltaSpontaneous,
  // edge
  CaGapHH,
  CaGapHL,
  CaGapLH,
  Ip3Gap,
  // transmitter reservoir
  Stimulus,
};

std::string_view to_string(Channel c);

inline constexpr std::size_t kHealthyChannels = 7;
inline constexpr std::size_t kAdChannels = 12;
inline constexpr std::size_t kEdgeChannels = 4;

std::size_t cell_channel_count(Scenario s);

struct PoolDelta {
  CellId cell = 0;
  Pool pool = Pool::Ca;
  double amount = 0.0;  // uM (dimensionless for R)

  bool operator==(const PoolDelta&) const = default;
};

enum class TargetKind : std::uint8_t { Cell, Edge, Transmitter };

struct Reaction {
  std::uint32_t id = 0;  // layout index, stable for a given graph
  Channel channel = Channel::Influx;
  TargetKind target_kind = TargetKind::Cell;
  std::uint32_t target = 0;  // cell id or edge id
  std::array<PoolDelta, 2> deltas{};
  std::uint8_t n_deltas = 0;
  double propensity = 0.0;  // 1/s

  std::span<const PoolDelta> changes() const { return {deltas.data(), n_deltas}; }
};

struct CellPools {
  double ca = 0.0;
  double er = 0.0;
  double ip3 = 0.0;
  double r = 0.0;  // active IP3R fraction; unused by the three-pool model

  bool operator==(const CellPools&) const = default;
};

/// Everything build_propensities needs besides the state and the graph.
struct NetworkParams {
  ModelParams model;
  double delta_quantum = 0.01;   // uM per firing
  double r_quantum = 1e-3;       // R step per firing
  double diffusion_rate = 1.0;   // D / v, 1/s
  std::array<double, 3> conductance_weights{1.0, 0.5, 0.5};  // HH, HL, LH
  bool ip3_diffusion = true;
  bool cell_reactions = true;
  double membrane_voltage = -70.0;   // mV
  double junctional_voltage = 0.0;   // mV
};

struct TissueState {
  std::vector<CellPools> cells;
  std::vector<VgccGating> gating;   // four-pool model only
  std::vector<GjEdgeState> edges;   // indexed by EdgeId
  double t = 0.0;
  double stimulus_rate = 0.0;       // current transmitter source, uM/s
  CellId transmitter = 0;
};

/// Signed IP3 flow from cell i to cell j (uM/s); negative means j -> i.
double ip3_gap_flux(double ip3_i, double ip3_j, const AdParams& p);

/// Per-cell resting state and gates for `scenario`.
CellPools resting_pools(Scenario scenario);

/// All reactions with positive propensity, in layout order.
std::vector<Reaction> build_propensities(const TissueState& ts, const NetworkParams& np,
                                         const TissueGraph& g);

/// Roulette-wheel selection: the unique u with
/// sum_{j<u} a_j / a0 < rho2 <= sum_{j<=u} a_j / a0. nullopt when all are zero.
std::optional<std::size_t> select_reaction(std::span<const Reaction> reactions, double rho2);
std::optional<std::size_t> select_reaction(std::span<const double> propensities, double rho2);

/// ln(1/rho1) / alpha0; nullopt when alpha0 is zero.
std::optional<double> sample_tau(double alpha0, double rho1);

enum class ImpulseSource : std::uint8_t { Synaptic, Spontaneous };

struct ImpulseEvent {
  double t = 0.0;
  double amount = 0.0;  // uM added to IP3
  ImpulseSource source = ImpulseSource::Synaptic;
};

/// Poisson IP3 production impulses over [0, window): synaptic at mean spacing
/// t_k_mean with size O_beta * U(0,1), spontaneous at v_n_mean with O_delta * U(0,1).
std::vector<ImpulseEvent> sample_j_prod(const AdParams& p, double window, Rng& rng);

struct ReactionEvent {
  double t = 0.0;
  std::uint32_t reaction_id = 0;
  Channel channel = Channel::Influx;
  std::uint8_t n_deltas = 0;
  std::uint32_t target = 0;
  std::array<PoolDelta, 2> deltas{};  // amounts actually applied

  std::span<const PoolDelta> changes() const { return {deltas.data(), n_deltas}; }
};

struct Snapshot {
  double t = 0.0;
  std::vector<CellPools> cells;
};

enum class Termination : std::uint8_t { TimeLimit, Quiescent };

std::string_view to_string(Termination t);

struct EventLog {
  Scenario scenario = Scenario::Healthy;
  std::size_t cell_count = 0;
  CellId transmitter = 0;
  CellId receiver = 0;
  double delta_quantum = 0.0;
  double t_end = 0.0;
  StimulusSchedule stimulus;

  std::vector<ReactionEvent> events;  // empty when the run streamed them instead
  std::vector<Snapshot> snapshots;
  std::uint64_t total_events = 0;
  std::uint64_t clamp_count = 0;      // firings trimmed so a pool stays >= 0
  Termination termination = Termination::TimeLimit;
};

enum class InitialState : std::uint8_t { Equilibrium, RestingDefault };
enum class JunctionInit : std::uint8_t { Stationary, Open };

struct EngineOptions {
  double sim_time_max = 10.0;      // s
  double snapshot_interval = 0.1;  // s; <= 0 keeps only the initial snapshot
  double substep = 1e-3;           // s, deterministic sub-step cap
  InitialState initial_state = InitialState::Equilibrium;
  JunctionInit junction_init = JunctionInit::Stationary;
  bool keep_events = true;
  /// After every firing, compare the incrementally maintained propensities
  /// with a full rebuild; throws std::logic_error on any difference. Slow.
  bool verify_incremental = false;
  /// Called for every firing, after the deltas are applied.
  std::function<void(const ReactionEvent&)> on_event;
};

/// Initial per-cell values for `scenario` (same for every cell).
CellPools initial_pools(const NetworkParams& np, InitialState init);

/// Runs the direct method until the clock reaches `opt.sim_time_max` or every
/// propensity is zero with no scheduled change ahead (flagged Quiescent).
/// Throws IntegrationDiverged if a pool turns non-finite.
EventLog simulate(const TissueGraph& g, const NetworkParams& np, const StimulusSchedule& stimulus,
                  CellId transmitter, CellId receiver, const EngineOptions& opt, Rng& rng);

/// Folds the logged deltas into `cells`.
void apply_event(std::vector<CellPools>& cells, const ReactionEvent& e);

/// CSV `t,reaction_id,target,pool,delta`, one row per pool change.
void write_event_csv(std::ostream& os, const EventLog& log);
/// CSV `t,cell_id,Ca,Er,Ip3[,R]`.
void write_snapshot_csv(std::ostream& os, const EventLog& log);

}  // namespace astronet
