// Parameter presets. Every default value used by the models lives here.

#include "astronet/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "astronet/errors.hpp"

namespace astronet {

std::string_view to_string(Scenario s) {
  return s == Scenario::Healthy ? "healthy" : "alzheimer";
}

Scenario scenario_from_string(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "healthy") return Scenario::Healthy;
  if (lower == "alzheimer" || lower == "ad") return Scenario::Alzheimer;
  throw ConfigError("scenario", "expected 'healthy' or 'alzheimer', got '" + std::string(s) + "'");
}

namespace {

// Three-pool model of Lavrentovich & Hemkin (2008). Not part of the updated
// parameter table; used for both presets.
HealthyParams three_pool_defaults() {
  HealthyParams h;
  h.sigma0 = 0.05;
  h.kappa_o = 0.5;
  h.kappa_f = 0.5;
  h.kappa_d = 0.08;
  h.sigma_m3 = 40.0;
  h.kappa_c1 = 0.15;
  h.kappa_c2 = 0.15;
  h.kappa_i = 0.1;
  h.sigma_m2 = 15.0;
  h.kappa_2 = 0.1;
  h.sigma_p = 0.05;
  h.kappa_p = 0.3;
  h.hill_n = 2.02;
  h.hill_m = 2.2;
  h.hill_p = 2.0;
  return h;
}

// Single-column rows of the table are shared by both scenarios.
AdParams shared_rows() {
  AdParams a;
  a.atp_ex = 0.0;
  a.o_beta = 0.15;
  a.o_delta = 0.15;
  a.t_k_mean = 0.3;
  a.v_n_mean = 30.0;
  a.f_max = 3.64;
  a.i_theta = 0.15;
  a.omega_i = 0.05;
  return a;
}

AdParams normal_column() {
  AdParams a = shared_rows();
  a.k1 = 0.0004;
  a.k2 = 0.2;
  a.k3 = 0.5;
  a.k5 = 0.5;
  a.k6 = 4.0;
  a.k9 = 0.08;
  a.v7 = 0.02;
  a.k_ip3 = 0.3;
  a.k_a = 0.2;
  a.k_i = 0.2;
  a.k_ca = 0.3;
  a.beta = 35.0;
  a.h_cce = 10.0;
  a.k_cce = 0.01;
  a.k_p2x = 0.08;
  a.h_p2x = 0.09;
  a.k_p2y = 0.5;
  a.k_d = 10.0;
  return a;
}

AdParams alzheimer_column() {
  AdParams a = shared_rows();
  a.k1 = 0.1;
  a.k2 = 1.5;
  a.k3 = 0.1;
  a.k5 = 0.05;
  a.k6 = 0.5;
  a.k9 = 0.5;
  a.v7 = 15.0;
  a.k_ip3 = 0.5;
  a.k_a = 2.02;
  a.k_i = 0.15;
  a.k_ca = 0.15;
  a.beta = 0.1;
  a.h_cce = 40.0;
  a.k_cce = 2.2;
  a.k_p2x = 0.08;  // listed as a free parameter; defaults to the normal value
  a.h_p2x = 0.15;
  a.k_p2y = 0.5;
  a.k_d = 0.8;
  return a;
}

VgccParams vgcc_defaults() {
  VgccParams v;
  v.g_t = 0.06;
  v.g_l = 3.5;
  v.g_n = 0.39;
  v.g_r = 0.2225;
  v.z = 2.0;
  v.temperature = 300.0;
  v.gas_constant = 8.31;
  v.faraday = 96485.0;
  v.v_ast = 5.223e-13;
  v.ca_out = 2000.0;
  return v;
}

// Two-gate junction defaults (Baigent et al. 1997 lineage); not table values.
GapJunctionParams gap_junction_defaults() {
  GapJunctionParams g;
  g.lambda = 0.13;
  g.a_alpha = 0.077;
  g.a_beta = 0.14;
  g.v0 = 20.0;
  return g;
}

#define ASTRONET_SYM(group, name, path) \
  ParamSymbol { group, name, [](ModelParams& p) -> double& { return p.path; } }

std::vector<ParamSymbol> make_symbols() {
  return {
      ASTRONET_SYM("healthy", "sigma0", healthy.sigma0),
      ASTRONET_SYM("healthy", "kappa_o", healthy.kappa_o),
      ASTRONET_SYM("healthy", "kappa_f", healthy.kappa_f),
      ASTRONET_SYM("healthy", "kappa_d", healthy.kappa_d),
      ASTRONET_SYM("healthy", "Sigma_M3", healthy.sigma_m3),
      ASTRONET_SYM("healthy", "kappa_C1", healthy.kappa_c1),
      ASTRONET_SYM("healthy", "kappa_C2", healthy.kappa_c2),
      ASTRONET_SYM("healthy", "kappa_I", healthy.kappa_i),
      ASTRONET_SYM("healthy", "Sigma_M2", healthy.sigma_m2),
      ASTRONET_SYM("healthy", "kappa_2", healthy.kappa_2),
      ASTRONET_SYM("healthy", "Sigma_p", healthy.sigma_p),
      ASTRONET_SYM("healthy", "kappa_p", healthy.kappa_p),
      ASTRONET_SYM("healthy", "hill_n", healthy.hill_n),
      ASTRONET_SYM("healthy", "hill_m", healthy.hill_m),
      ASTRONET_SYM("healthy", "hill_p", healthy.hill_p),
      ASTRONET_SYM("pools", "k1", pools.k1),
      ASTRONET_SYM("pools", "k2", pools.k2),
      ASTRONET_SYM("pools", "k3", pools.k3),
      ASTRONET_SYM("pools", "k5", pools.k5),
      ASTRONET_SYM("pools", "k6", pools.k6),
      ASTRONET_SYM("pools", "k9", pools.k9),
      ASTRONET_SYM("pools", "v7", pools.v7),
      ASTRONET_SYM("pools", "K_IP3", pools.k_ip3),
      ASTRONET_SYM("pools", "K_a", pools.k_a),
      ASTRONET_SYM("pools", "K_i", pools.k_i),
      ASTRONET_SYM("pools", "K_Ca", pools.k_ca),
      ASTRONET_SYM("pools", "beta", pools.beta),
      ASTRONET_SYM("pools", "H_CCE", pools.h_cce),
      ASTRONET_SYM("pools", "k_CCE", pools.k_cce),
      ASTRONET_SYM("pools", "k_ATP_P2X", pools.k_p2x),
      ASTRONET_SYM("pools", "H_ATP_P2X", pools.h_p2x),
      ASTRONET_SYM("pools", "k_ATP_P2Y", pools.k_p2y),
      ASTRONET_SYM("pools", "K_D", pools.k_d),
      ASTRONET_SYM("pools", "atp_ex", pools.atp_ex),
      ASTRONET_SYM("pools", "O_beta", pools.o_beta),
      ASTRONET_SYM("pools", "O_delta", pools.o_delta),
      ASTRONET_SYM("pools", "t_k_mean", pools.t_k_mean),
      ASTRONET_SYM("pools", "v_n_mean", pools.v_n_mean),
      ASTRONET_SYM("pools", "F_max", pools.f_max),
      ASTRONET_SYM("pools", "I_theta", pools.i_theta),
      ASTRONET_SYM("pools", "omega_I", pools.omega_i),
      ASTRONET_SYM("vgcc", "g_T", vgcc.g_t),
      ASTRONET_SYM("vgcc", "g_L", vgcc.g_l),
      ASTRONET_SYM("vgcc", "g_N", vgcc.g_n),
      ASTRONET_SYM("vgcc", "g_R", vgcc.g_r),
      ASTRONET_SYM("vgcc", "z", vgcc.z),
      ASTRONET_SYM("vgcc", "T", vgcc.temperature),
      ASTRONET_SYM("vgcc", "R", vgcc.gas_constant),
      ASTRONET_SYM("vgcc", "F", vgcc.faraday),
      ASTRONET_SYM("vgcc", "V_ast", vgcc.v_ast),
      ASTRONET_SYM("vgcc", "ca_out", vgcc.ca_out),
      ASTRONET_SYM("gj", "lambda", gj.lambda),
      ASTRONET_SYM("gj", "A_alpha", gj.a_alpha),
      ASTRONET_SYM("gj", "A_beta", gj.a_beta),
      ASTRONET_SYM("gj", "v0", gj.v0),
  };
}

#undef ASTRONET_SYM

void require(bool ok, std::string_view name, const char* what) {
  if (!ok) throw ConfigError("params." + std::string(name), what);
}

}  // namespace

ModelParams preset(Scenario s) {
  ModelParams p;
  p.scenario = s;
  p.healthy = three_pool_defaults();
  p.pools = s == Scenario::Healthy ? normal_column() : alzheimer_column();
  p.vgcc = vgcc_defaults();
  p.gj = gap_junction_defaults();
  return p;
}

const std::vector<ParamSymbol>& param_symbols() {
  static const std::vector<ParamSymbol> table = make_symbols();
  return table;
}

const ParamSymbol* find_symbol(std::string_view name) {
  for (const auto& sym : param_symbols()) {
    if (sym.name == name) return &sym;
  }
  return nullptr;
}

void validate(const ModelParams& p) {
  for (const auto& sym : param_symbols()) {
    const double v = sym.get(p);
    require(std::isfinite(v), sym.name, "must be finite");
    // Voltage offsets are the only signed quantities.
    if (sym.name != "v0") require(v >= 0.0, sym.name, "must be >= 0");
  }
  const auto& h = p.healthy;
  require(h.hill_n >= 1.0, "hill_n", "Hill coefficient must be >= 1");
  require(h.hill_m >= 1.0, "hill_m", "Hill coefficient must be >= 1");
  require(h.hill_p >= 1.0, "hill_p", "Hill coefficient must be >= 1");
  require(h.kappa_c1 != 0.0, "kappa_C1", "must be non-zero");
  require(h.kappa_c2 != 0.0, "kappa_C2", "must be non-zero");

  const auto& a = p.pools;
  require(a.omega_i > 0.0, "omega_I", "must be > 0");
  require(a.t_k_mean > 0.0, "t_k_mean", "Poisson mean must be > 0");
  require(a.v_n_mean > 0.0, "v_n_mean", "Poisson mean must be > 0");
  for (auto [name, v] : {std::pair{"k1", a.k1}, {"k2", a.k2}, {"k3", a.k3}, {"k5", a.k5},
                         {"k6", a.k6}, {"k9", a.k9}, {"K_IP3", a.k_ip3}, {"K_a", a.k_a},
                         {"K_i", a.k_i}, {"H_CCE", a.h_cce}, {"H_ATP_P2X", a.h_p2x},
                         {"K_D", a.k_d}}) {
    require(v > 0.0, name, "must be > 0");
  }

  require(p.vgcc.v_ast > 0.0, "V_ast", "must be > 0");
  require(p.vgcc.temperature > 0.0, "T", "must be > 0");
  require(p.vgcc.faraday > 0.0, "F", "must be > 0");
  require(p.vgcc.z > 0.0, "z", "must be > 0");
  require(p.gj.lambda > 0.0, "lambda", "must be > 0");
}

}  // namespace astronet
