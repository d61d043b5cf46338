#include "astronet/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "astronet/errors.hpp"

namespace astronet {

using nlohmann::json;

double default_cell_volume_um3(Scenario s) {
  return s == Scenario::Healthy ? kHealthyCellVolumeUm3 : kAlzheimerCellVolumeUm3;
}

ModelParams ScenarioConfig::model() const {
  ModelParams m = preset(scenario);
  for (const auto& [name, value] : param_overrides) {
    const auto* sym = find_symbol(name);
    if (!sym) throw ConfigError("params." + name, "unknown parameter symbol");
    sym->ref(m) = value;
  }
  return m;
}

NetworkParams ScenarioConfig::network() const {
  NetworkParams np;
  np.model = model();
  np.delta_quantum = delta_quantum;
  np.r_quantum = engine.r_quantum;
  np.diffusion_rate = diffusion.coefficient / volume_um3();
  np.conductance_weights = diffusion.conductance_weights;
  np.ip3_diffusion = diffusion.ip3;
  np.cell_reactions = engine.cell_reactions;
  np.membrane_voltage = membrane_voltage_mv;
  np.junctional_voltage = junctional_voltage_mv;
  return np;
}

EngineOptions ScenarioConfig::engine_options() const {
  EngineOptions o;
  o.sim_time_max = sim_time_max;
  o.snapshot_interval = engine.snapshot_interval;
  o.substep = engine.substep;
  o.initial_state = engine.initial_state;
  o.junction_init = engine.junction_init;
  return o;
}

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

void validate_coord(const LatticeDims& d, const CellCoord& c, const std::string& key) {
  require(in_bounds(d, c), key,
          "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) + ") outside the " +
              std::to_string(d.i) + "x" + std::to_string(d.j) + "x" + std::to_string(d.k) + " lattice");
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.lattice.i >= 1 && c.lattice.j >= 1 && c.lattice.k >= 1, "lattice", "dimensions must be >= 1");
  require(c.lattice.size() <= 10'000'000, "lattice", "more than 1e7 cells");
  validate(c.topology);
  if (c.cell_volume_um3) require(*c.cell_volume_um3 > 0.0, "cell_volume_um3", "must be > 0");
  validate_coord(c.lattice, c.transmitter, "transmitter");
  validate_coord(c.lattice, c.receiver, "receiver");
  require(!(c.transmitter == c.receiver), "receiver", "must differ from transmitter");
  const auto& s = c.stimulus;
  require(s.frequency_hz >= 0.0, "stimulus.frequency_hz", "must be >= 0");
  require(s.kind == StimulusKind::Burst || s.frequency_hz > 0.0, "stimulus.frequency_hz",
          "must be > 0 for sine and square stimuli");
  require(s.amplitude >= 0.0, "stimulus.amplitude", "must be >= 0");
  require(s.duration > 0.0, "stimulus.duration", "must be > 0");
  require(s.start >= 0.0, "stimulus.start", "must be >= 0");
  require(c.sim_time_max > 0.0, "sim_time_max", "must be > 0");
  require(c.delta_quantum > 0.0, "delta_quantum", "must be > 0");
  require(c.activation_threshold >= 0.0, "activation_threshold", "must be >= 0");
  if (c.gain_window) require(*c.gain_window > 0.0, "gain_window", "must be > 0");
  require(c.diffusion.coefficient >= 0.0, "diffusion.coefficient", "must be >= 0");
  for (double w : c.diffusion.conductance_weights)
    require(w >= 0.0, "diffusion.conductance_weights", "weights must be >= 0");
  require(c.engine.snapshot_interval >= 0.0, "engine.snapshot_interval", "must be >= 0");
  require(c.engine.substep > 0.0, "engine.substep", "must be > 0");
  require(c.engine.r_quantum > 0.0, "engine.r_quantum", "must be > 0");
  validate(c.model());
}

namespace {

// Reader that tracks the key path and rejects unknown keys.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  bool has(const std::string& k) const {
    seen_.insert(k);
    return j_.contains(k);
  }
  const json& at(const std::string& k) const {
    seen_.insert(k);
    return j_.at(k);
  }

  double number(const std::string& k, double def) const {
    if (!has(k)) return def;
    const auto& v = at(k);
    if (!v.is_number()) throw ConfigError(key(k), "expected a number");
    return v.get<double>();
  }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const auto& v = at(k);
    if (!v.is_number_integer()) throw ConfigError(key(k), "expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const auto& v = at(k);
    if (!v.is_boolean()) throw ConfigError(key(k), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& k, const std::string& def) const {
    if (!has(k)) return def;
    const auto& v = at(k);
    if (!v.is_string()) throw ConfigError(key(k), "expected a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

CellCoord read_coord(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number_integer() || !v[1].is_number_integer() ||
      !v[2].is_number_integer()) {
    throw ConfigError(key, "expected [i, j, k] integers");
  }
  return {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
}

TopologySpec read_topology(const json& v, const std::string& path) {
  Obj o(v, path);
  const std::string kind = o.string("kind", "");
  TopologySpec spec;
  if (kind == "regular_degree") {
    spec = RegularDegree{o.integer("n", RegularDegree{}.n)};
  } else if (kind == "link_radius") {
    spec = LinkRadius{o.number("d", LinkRadius{}.d), o.integer("n_max", LinkRadius{}.n_max)};
  } else if (kind == "shortcut") {
    spec = Shortcut{o.integer("a", Shortcut{}.a), o.integer("n", Shortcut{}.n)};
  } else if (kind == "erdos_renyi") {
    spec = ErdosRenyi{o.number("p", ErdosRenyi{}.p)};
  } else {
    throw ConfigError(o.key("kind"),
                      "expected regular_degree|link_radius|shortcut|erdos_renyi, got '" + kind + "'");
  }
  o.finish();
  return spec;
}

json write_topology(const TopologySpec& t) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RegularDegree>) {
          return {{"kind", "regular_degree"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, LinkRadius>) {
          return {{"kind", "link_radius"}, {"d", s.d}, {"n_max", s.n_max}};
        } else if constexpr (std::is_same_v<T, Shortcut>) {
          return {{"kind", "shortcut"}, {"a", s.a}, {"n", s.n}};
        } else {
          return {{"kind", "erdos_renyi"}, {"p", s.p}};
        }
      },
      t);
}

std::string_view to_string(InitialState s) {
  return s == InitialState::Equilibrium ? "equilibrium" : "resting_default";
}
std::string_view to_string(JunctionInit s) { return s == JunctionInit::Stationary ? "stationary" : "open"; }

ScenarioConfig read_scenario(const json& root, const std::string& path) {
  Obj o(root, path);
  ScenarioConfig c;
  if (o.has("scenario")) {
    const auto& v = o.at("scenario");
    if (!v.is_string()) throw ConfigError(o.key("scenario"), "expected a string");
    c.scenario = scenario_from_string(v.get<std::string>());
  }
  if (o.has("lattice")) {
    Obj l(o.at("lattice"), o.key("lattice"));
    c.lattice = {l.integer("I", c.lattice.i), l.integer("J", c.lattice.j), l.integer("K", c.lattice.k)};
    l.finish();
  }
  if (o.has("topology")) c.topology = read_topology(o.at("topology"), o.key("topology"));
  if (o.has("cell_volume_um3")) c.cell_volume_um3 = o.number("cell_volume_um3", 0.0);
  if (o.has("transmitter")) c.transmitter = read_coord(o.at("transmitter"), o.key("transmitter"));
  if (o.has("receiver")) c.receiver = read_coord(o.at("receiver"), o.key("receiver"));
  if (o.has("stimulus")) {
    Obj s(o.at("stimulus"), o.key("stimulus"));
    const std::string kind = s.string("kind", std::string(to_string(c.stimulus.kind)));
    c.stimulus.kind = stimulus_kind_from_string(kind);
    c.stimulus.frequency_hz = s.number("frequency_hz", c.stimulus.frequency_hz);
    c.stimulus.amplitude = s.number("amplitude", c.stimulus.amplitude);
    c.stimulus.duration = s.number("duration", c.stimulus.duration);
    c.stimulus.start = s.number("start", c.stimulus.start);
    s.finish();
  }
  c.sim_time_max = o.number("sim_time_max", c.sim_time_max);
  if (o.has("rng_seed")) {
    const auto& v = o.at("rng_seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError(o.key("rng_seed"), "expected a non-negative integer");
    c.rng_seed = v.get<std::uint64_t>();
  }
  c.delta_quantum = o.number("delta_quantum", c.delta_quantum);
  c.activation_threshold = o.number("activation_threshold", c.activation_threshold);
  if (o.has("gain_window")) c.gain_window = o.number("gain_window", 0.0);
  c.membrane_voltage_mv = o.number("membrane_voltage_mv", c.membrane_voltage_mv);
  c.junctional_voltage_mv = o.number("junctional_voltage_mv", c.junctional_voltage_mv);
  if (o.has("diffusion")) {
    Obj d(o.at("diffusion"), o.key("diffusion"));
    c.diffusion.coefficient = d.number("coefficient", c.diffusion.coefficient);
    if (d.has("conductance_weights")) {
      const auto& w = d.at("conductance_weights");
      if (!w.is_array() || w.size() != 3 || !w[0].is_number() || !w[1].is_number() || !w[2].is_number())
        throw ConfigError(d.key("conductance_weights"), "expected [w_HH, w_HL, w_LH]");
      c.diffusion.conductance_weights = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>()};
    }
    c.diffusion.ip3 = d.boolean("ip3", c.diffusion.ip3);
    d.finish();
  }
  if (o.has("engine")) {
    Obj e(o.at("engine"), o.key("engine"));
    c.engine.snapshot_interval = e.number("snapshot_interval", c.engine.snapshot_interval);
    c.engine.substep = e.number("substep", c.engine.substep);
    c.engine.cell_reactions = e.boolean("cell_reactions", c.engine.cell_reactions);
    c.engine.r_quantum = e.number("r_quantum", c.engine.r_quantum);
    const std::string init = e.string("initial_state", std::string(to_string(c.engine.initial_state)));
    if (init == "equilibrium") {
      c.engine.initial_state = InitialState::Equilibrium;
    } else if (init == "resting_default") {
      c.engine.initial_state = InitialState::RestingDefault;
    } else {
      throw ConfigError(e.key("initial_state"), "expected equilibrium|resting_default, got '" + init + "'");
    }
    const std::string gj = e.string("junction_init", std::string(to_string(c.engine.junction_init)));
    if (gj == "stationary") {
      c.engine.junction_init = JunctionInit::Stationary;
    } else if (gj == "open") {
      c.engine.junction_init = JunctionInit::Open;
    } else {
      throw ConfigError(e.key("junction_init"), "expected stationary|open, got '" + gj + "'");
    }
    e.finish();
  }
  if (o.has("params")) {
    const auto& p = o.at("params");
    if (!p.is_object()) throw ConfigError(o.key("params"), "expected an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
      const std::string k = o.key("params") + "." + it.key();
      if (!find_symbol(it.key())) throw ConfigError(k, "unknown parameter symbol");
      if (!it.value().is_number()) throw ConfigError(k, "expected a number");
      c.param_overrides[it.key()] = it.value().get<double>();
    }
  }
  o.finish();
  return c;
}

json write_scenario(const ScenarioConfig& c) {
  json j;
  j["scenario"] = std::string(to_string(c.scenario));
  j["lattice"] = {{"I", c.lattice.i}, {"J", c.lattice.j}, {"K", c.lattice.k}};
  j["topology"] = write_topology(c.topology);
  if (c.cell_volume_um3) j["cell_volume_um3"] = *c.cell_volume_um3;
  j["transmitter"] = {c.transmitter.i, c.transmitter.j, c.transmitter.k};
  j["receiver"] = {c.receiver.i, c.receiver.j, c.receiver.k};
  j["stimulus"] = {{"kind", std::string(to_string(c.stimulus.kind))},
                   {"frequency_hz", c.stimulus.frequency_hz},
                   {"amplitude", c.stimulus.amplitude},
                   {"duration", c.stimulus.duration},
                   {"start", c.stimulus.start}};
  j["sim_time_max"] = c.sim_time_max;
  j["rng_seed"] = c.rng_seed;
  j["delta_quantum"] = c.delta_quantum;
  j["activation_threshold"] = c.activation_threshold;
  if (c.gain_window) j["gain_window"] = *c.gain_window;
  j["membrane_voltage_mv"] = c.membrane_voltage_mv;
  j["junctional_voltage_mv"] = c.junctional_voltage_mv;
  j["diffusion"] = {{"coefficient", c.diffusion.coefficient},
                    {"conductance_weights", c.diffusion.conductance_weights},
                    {"ip3", c.diffusion.ip3}};
  j["engine"] = {{"snapshot_interval", c.engine.snapshot_interval},
                 {"substep", c.engine.substep},
                 {"cell_reactions", c.engine.cell_reactions},
                 {"initial_state", std::string(to_string(c.engine.initial_state))},
                 {"junction_init", std::string(to_string(c.engine.junction_init))},
                 {"r_quantum", c.engine.r_quantum}};
  j["params"] = json::object();
  for (const auto& [k, v] : c.param_overrides) j["params"][k] = v;
  return j;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", source + ": malformed JSON: " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_seed_env(std::uint64_t& seed) {
  const char* env = std::getenv("ASTRONET_SEED");
  if (!env || !*env) return;
  const std::string_view s(env);
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw ConfigError("ASTRONET_SEED", "expected a non-negative integer, got '" + std::string(s) + "'");
  seed = v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  auto c = read_scenario(parse_json(text, source), "");
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  auto c = read_scenario(parse_json(read_file(path), path.string()), "");
  apply_seed_env(c.rng_seed);
  validate(c);
  return c;
}

std::string serialize(const ScenarioConfig& c) { return write_scenario(c).dump(2) + "\n"; }

namespace {

MatrixConfig read_matrix(const json& root) {
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  json base = root;
  base.erase("sweep");
  base.erase("threshold_policy");
  MatrixConfig m;
  m.base = read_scenario(base, "");

  Obj o(root, "");
  if (!o.has("sweep")) throw ConfigError("sweep", "missing");
  Obj s(o.at("sweep"), "sweep");
  if (s.has("scenarios")) {
    for (const auto& v : s.at("scenarios")) {
      if (!v.is_string()) throw ConfigError("sweep.scenarios", "expected strings");
      const auto name = v.get<std::string>();
      if (name != "healthy" && name != "alzheimer")
        throw ConfigError("sweep.scenarios", "expected 'healthy' or 'alzheimer', got '" + name + "'");
      m.sweep.scenarios.push_back(scenario_from_string(name));
    }
  } else {
    m.sweep.scenarios = {m.base.scenario};
  }
  if (s.has("topologies")) {
    std::size_t i = 0;
    for (const auto& v : s.at("topologies")) {
      m.sweep.topologies.push_back(read_topology(v, "sweep.topologies[" + std::to_string(i++) + "]"));
    }
  } else {
    m.sweep.topologies = {m.base.topology};
  }
  if (s.has("distances")) {
    for (const auto& v : s.at("distances")) {
      if (!v.is_number_integer() || v.get<int>() < 1) throw ConfigError("sweep.distances", "expected integers >= 1");
      m.sweep.distances.push_back(v.get<int>());
    }
  } else {
    const int d = m.base.receiver.i - m.base.transmitter.i;
    if (d < 1 || m.base.receiver.j != m.base.transmitter.j || m.base.receiver.k != m.base.transmitter.k)
      throw ConfigError("sweep.distances", "missing, and the receiver is not along +i from the transmitter");
    m.sweep.distances = {d};
  }
  if (s.has("frequencies")) {
    for (const auto& v : s.at("frequencies")) {
      if (!v.is_number() || v.get<double>() < 0.0) throw ConfigError("sweep.frequencies", "expected numbers >= 0");
      m.sweep.frequencies.push_back(v.get<double>());
    }
  } else {
    m.sweep.frequencies = {m.base.stimulus.frequency_hz};
  }
  if (s.has("seeds")) {
    const auto& v = s.at("seeds");
    if (v.is_number_integer()) {
      const auto n = v.get<std::int64_t>();
      if (n < 1) throw ConfigError("sweep.seeds", "count must be >= 1");
      for (std::int64_t r = 0; r < n; ++r) {
        m.sweep.seeds.push_back(replica_seed(m.base.rng_seed, static_cast<std::uint64_t>(r)));
      }
    } else if (v.is_array()) {
      for (const auto& x : v) {
        if (!x.is_number_unsigned()) throw ConfigError("sweep.seeds", "expected non-negative integers");
        m.sweep.seeds.push_back(x.get<std::uint64_t>());
      }
    } else {
      throw ConfigError("sweep.seeds", "expected a count or a list of seeds");
    }
  } else {
    m.sweep.seeds = {m.base.rng_seed};
  }
  s.finish();
  for (const auto* name : {"scenarios", "topologies", "distances", "frequencies", "seeds"}) {
    const bool empty = (std::string_view(name) == "scenarios" && m.sweep.scenarios.empty()) ||
                       (std::string_view(name) == "topologies" && m.sweep.topologies.empty()) ||
                       (std::string_view(name) == "distances" && m.sweep.distances.empty()) ||
                       (std::string_view(name) == "frequencies" && m.sweep.frequencies.empty()) ||
                       (std::string_view(name) == "seeds" && m.sweep.seeds.empty());
    if (empty) throw ConfigError(std::string("sweep.") + name, "must not be empty");
  }

  // The base receiver only has to be valid; each cell places its own.
  m.base.receiver = m.base.transmitter;
  m.base.receiver.i += m.sweep.distances.front();

  if (o.has("threshold_policy")) {
    Obj t(o.at("threshold_policy"), "threshold_policy");
    const std::string mode = t.string("mode", "fixed");
    if (mode == "calibrated") {
      m.threshold.calibrated = true;
    } else if (mode != "fixed") {
      throw ConfigError("threshold_policy.mode", "expected fixed|calibrated, got '" + mode + "'");
    }
    const int runs = t.integer("control_runs", static_cast<int>(m.threshold.control_runs));
    if (runs < 1) throw ConfigError("threshold_policy.control_runs", "must be >= 1");
    m.threshold.control_runs = static_cast<std::size_t>(runs);
    m.threshold.quantile = t.number("quantile", m.threshold.quantile);
    if (!(m.threshold.quantile > 0.0 && m.threshold.quantile <= 1.0))
      throw ConfigError("threshold_policy.quantile", "must be in (0, 1]");
    m.threshold.floor = t.number("floor", m.threshold.floor);
    if (!(m.threshold.floor >= 0.0)) throw ConfigError("threshold_policy.floor", "must be >= 0");
    t.finish();
  }
  for (const auto& t : m.sweep.topologies) validate(t);
  return m;
}

json write_matrix(const MatrixConfig& m) {
  json j = write_scenario(m.base);
  json s;
  s["scenarios"] = json::array();
  for (auto sc : m.sweep.scenarios) s["scenarios"].push_back(std::string(to_string(sc)));
  s["topologies"] = json::array();
  for (const auto& t : m.sweep.topologies) s["topologies"].push_back(write_topology(t));
  s["distances"] = m.sweep.distances;
  s["frequencies"] = m.sweep.frequencies;
  s["seeds"] = m.sweep.seeds;
  j["sweep"] = s;
  j["threshold_policy"] = {{"mode", m.threshold.calibrated ? "calibrated" : "fixed"},
                           {"control_runs", m.threshold.control_runs},
                           {"quantile", m.threshold.quantile},
                           {"floor", m.threshold.floor}};
  return j;
}

}  // namespace

MatrixConfig parse_matrix_config(const std::string& text, const std::string& source) {
  auto m = read_matrix(parse_json(text, source));
  validate(m.base);
  return m;
}

MatrixConfig load_matrix_config(const std::filesystem::path& path) {
  auto m = read_matrix(parse_json(read_file(path), path.string()));
  std::uint64_t seed = m.base.rng_seed;
  apply_seed_env(seed);
  if (seed != m.base.rng_seed) {
    // The override reseeds the whole sweep, keeping its size.
    const std::size_t n = m.sweep.seeds.size();
    m.base.rng_seed = seed;
    m.sweep.seeds.clear();
    for (std::size_t r = 0; r < n; ++r) m.sweep.seeds.push_back(replica_seed(seed, r));
  }
  validate(m.base);
  return m;
}

std::string serialize(const MatrixConfig& m) { return write_matrix(m).dump(2) + "\n"; }

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t r) {
  return r == 0 ? seed : splitmix64(seed ^ splitmix64(r));
}

TissueGraph build_graph(const ScenarioConfig& c, Rng& rng) {
  return build_topology(c.lattice, c.topology, cell_id(c.lattice, c.transmitter), cell_id(c.lattice, c.receiver),
                        rng);
}

EventLog run(const ScenarioConfig& c) { return run(c, c.engine_options()); }

EventLog run(const ScenarioConfig& c, const EngineOptions& opt) {
  Rng rng(c.rng_seed);
  const TissueGraph g = build_graph(c, rng);
  return simulate(g, c.network(), apply_stimulus(c.stimulus), cell_id(c.lattice, c.transmitter),
                  cell_id(c.lattice, c.receiver), opt, rng);
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

}  // namespace astronet
