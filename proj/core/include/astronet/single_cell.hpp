#pragma once

// Deterministic right-hand sides of the intracellular models.

#include "astronet/params.hpp"
#include "astronet/vgcc.hpp"

namespace astronet {

/// Three-pool state (uM).
struct HealthyState {
  double ca = 0.0;
  double er = 0.0;
  double ip3 = 0.0;

  bool operator==(const HealthyState&) const = default;
};

/// Four-pool state: concentrations in uM, `r` is the active IP3R fraction.
struct AdState {
  double ca = 0.0;
  double er = 0.0;
  double ip3 = 0.0;
  double r = 0.0;
  VgccGating gating;

  bool operator==(const AdState&) const = default;
};

/// Per-cell exogenous drive for the four-pool model.
struct CellInputs {
  double membrane_voltage = -70.0;  // mV
  double ip3_diffusion_in = 0.0;    // uM/s, net gap-junction IP3 flow into the cell
  double j_prod_rate = 0.0;         // uM/s, stochastic IP3 production
};

/// The three-pool fluxes, all uM/s.
struct HealthyFluxes {
  double influx = 0.0;      // sigma0
  double efflux = 0.0;      // kappa_o * Ca
  double er_release = 0.0;  // sigma1, signed with (Er - Ca)
  double serca = 0.0;       // sigma2
  double er_leak = 0.0;     // kappa_f * (Er - Ca), signed
  double plc = 0.0;         // sigma3
  double ip3_deg = 0.0;     // kappa_d * Ip3
};

HealthyFluxes healthy_fluxes(const HealthyState& s, const HealthyParams& p);

/// Parameter-only powers of the three-pool fluxes, hoisted out of hot loops.
struct HealthyPowers {
  double k1n = 0.0;  // kappa_C1^n
  double k2n = 0.0;  // kappa_C2^n
  double kim = 0.0;  // kappa_I^m
  double kpp = 0.0;  // kappa_p^p
};

HealthyPowers healthy_powers(const HealthyParams& p);
HealthyFluxes healthy_fluxes(const HealthyState& s, const HealthyParams& p, const HealthyPowers& k);

/// (dCa, dEr, dIp3) in uM/s.
HealthyState healthy_rhs(const HealthyState& s, const HealthyParams& p);

/// The four-pool membrane / ER fluxes, all uM/s. v_plc_beta is reported but
/// does not enter the IP3 balance.
struct FluxSet {
  double v_cce = 0.0;
  double v_ir = 0.0;
  double v_plc_beta = 0.0;
  double v_out = 0.0;
  double v_er_leak = 0.0;
  double v_er_rel = 0.0;
  double v_serca = 0.0;
};

FluxSet ad_fluxes(const AdState& s, const AdParams& p, const CellInputs& in);

double ip3r_recovery(double ca, const AdParams& p);
double ip3r_inactivation(double r, const AdParams& p);

/// Derivative of every AdState field (gating via gating_rhs).
AdState ad_rhs(const AdState& s, const AdParams& p, const VgccParams& vg, const CellInputs& in);

/// Healthy resting values used to seed cells.
HealthyState healthy_resting_default();
/// Four-pool resting default with gates at steady state for `v_mv`.
AdState ad_resting_default(double v_mv);

}  // namespace astronet
