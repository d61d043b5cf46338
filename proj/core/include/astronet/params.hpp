#pragma once

// Model parameters for the healthy three-pool and the beta-amyloid four-pool
// astrocyte models. Units: concentrations uM, time s, voltage mV, volume L.

#include <string_view>
#include <vector>

namespace astronet {

enum class Scenario { Healthy, Alzheimer };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view s);  // throws ConfigError

/// Three-pool cytosol / ER / IP3 model constants.
struct HealthyParams {
  double sigma0{};     // extracellular influx, uM/s
  double kappa_o{};     // efflux rate, 1/s
  double kappa_f{};     // ER leak rate, 1/s
  double kappa_d{};    // IP3 degradation rate, 1/s
  double sigma_m3{};   // max IP3R release rate, 1/s (multiplies E - C)
  double kappa_c1{};   // Ca activation constant, uM
  double kappa_c2{};   // Ca inhibition constant, uM
  double kappa_i{};     // IP3 half-activation, uM
  double sigma_m2{};   // max SERCA flux, uM/s
  double kappa_2{};     // SERCA half-activation, uM
  double sigma_p{};    // max PLC production, uM/s
  double kappa_p{};     // PLC half-activation, uM
  double hill_n{};
  double hill_m{};
  double hill_p{};

  bool operator==(const HealthyParams&) const = default;
};

/// Four-pool model constants, one column of the updated-model parameter table,
/// plus the stochastic IP3 production and IP3 gap-flux constants.
struct AdParams {
  double k1{};        // ER leak, 1/s
  double k2{};        // IP3R release, 1/s
  double k3{};        // SERCA, 1/s
  double k5{};       // plasma-membrane extrusion, 1/s
  double k6{};        // IP3R recovery / inactivation, 1/s
  double k9{};        // IP3 degradation, 1/s
  double v7{};       // uM/s, carried but unused by any flux
  double k_ip3{};     // uM
  double k_a{};      // uM
  double k_i{};      // uM
  double k_ca{};     // uM, carried but unused by any flux
  double beta{};      // ER/cytosol volume scaling
  double h_cce{};    // uM
  double k_cce{};     // uM/s
  double k_p2x{};    // uM/s
  double h_p2x{};    // uM
  double k_p2y{};     // uM/s
  double k_d{};       // uM
  double atp_ex{};    // extracellular ATP, uM
  double o_beta{};   // synaptic IP3 production weight, uM/s
  double o_delta{};  // spontaneous IP3 production weight, uM/s
  double t_k_mean{};  // mean synaptic inter-event time, s
  double v_n_mean{}; // mean spontaneous inter-event time, s
  double f_max{};    // max IP3 gap flux, uM/s
  double i_theta{};  // IP3 gradient threshold, uM
  double omega_i{};  // IP3 gradient slope, uM

  bool operator==(const AdParams&) const = default;
};

/// Voltage-gated calcium channel constants.
struct VgccParams {
  double g_t{};       // pS
  double g_l{};        // pS
  double g_n{};       // pS
  double g_r{};     // pS
  double z{};
  double temperature{};    // K
  double gas_constant{};    // J/(mol K)
  double faraday{};      // C/mol
  double v_ast{};      // L
  double ca_out{};        // uM

  bool operator==(const VgccParams&) const = default;
};

/// Two-gate voltage-sensitive gap junction constants.
struct GapJunctionParams {
  double lambda{};    // 1/s
  double a_alpha{};  // 1/mV
  double a_beta{};    // 1/mV
  double v0{};        // mV

  bool operator==(const GapJunctionParams&) const = default;
};

/// Full parameter set for one scenario.
struct ModelParams {
  Scenario scenario = Scenario::Healthy;
  HealthyParams healthy;
  AdParams pools;
  VgccParams vgcc;
  GapJunctionParams gj;

  bool operator==(const ModelParams&) const = default;
};

/// Parameter table column for `s`.
ModelParams preset(Scenario s);

/// Throws ConfigError naming the first offending symbol.
void validate(const ModelParams& p);

/// One named scalar of ModelParams. `group` is healthy|pools|vgcc|gj.
struct ParamSymbol {
  std::string_view group;
  std::string_view name;
  double& (*ref)(ModelParams&);

  double get(const ModelParams& p) const { return ref(const_cast<ModelParams&>(p)); }
};

/// Every parameter symbol, each resolving to exactly one field.
const std::vector<ParamSymbol>& param_symbols();

/// Symbol lookup; nullptr when unknown.
const ParamSymbol* find_symbol(std::string_view name);

}  // namespace astronet
