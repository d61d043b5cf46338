#include "astronet/single_cell.hpp"

#include <cmath>

namespace astronet {


HealthyPowers healthy_powers(const HealthyParams& p) {
  return {std::pow(p.kappa_c1, p.hill_n), std::pow(p.kappa_c2, p.hill_n), std::pow(p.kappa_i, p.hill_m),
          std::pow(p.kappa_p, p.hill_p)};
}

HealthyFluxes healthy_fluxes(const HealthyState& s, const HealthyParams& p, const HealthyPowers& k) {
  HealthyFluxes f;
  const double gradient = s.er - s.ca;
  const double can = std::pow(s.ca, p.hill_n);
  const double im = std::pow(s.ip3, p.hill_m);
  const double cp = p.hill_p == 2.0 ? s.ca * s.ca : std::pow(s.ca, p.hill_p);
  f.influx = p.sigma0;
  f.efflux = p.kappa_o * s.ca;
  f.er_release = 4.0 * p.sigma_m3 * (k.k1n * can) / ((can + k.k1n) * (can + k.k2n)) * (im / (k.kim + im)) * gradient;
  f.serca = p.sigma_m2 * s.ca * s.ca / (p.kappa_2 * p.kappa_2 + s.ca * s.ca);
  f.er_leak = p.kappa_f * gradient;
  f.plc = p.sigma_p * cp / (k.kpp + cp);
  f.ip3_deg = p.kappa_d * s.ip3;
  return f;
}

HealthyFluxes healthy_fluxes(const HealthyState& s, const HealthyParams& p) {
  return healthy_fluxes(s, p, healthy_powers(p));
}

HealthyState healthy_rhs(const HealthyState& s, const HealthyParams& p) {
  const auto f = healthy_fluxes(s, p);
  return {f.influx - f.efflux + f.er_release - f.serca + f.er_leak,
          f.serca - f.er_release - f.er_leak, f.plc - f.ip3_deg};
}

FluxSet ad_fluxes(const AdState& s, const AdParams& p, const CellInputs&) {
  FluxSet f;
  const double h2 = p.h_cce * p.h_cce;
  f.v_cce = p.k_cce * h2 / (h2 + s.er * s.er);
  const double atp_n = std::pow(p.atp_ex, 1.4);
  f.v_ir = p.k_p2x * atp_n / (p.h_p2x + atp_n);
  f.v_plc_beta = p.k_p2y * p.atp_ex / (p.k_d + p.atp_ex);
  f.v_out = p.k5 * s.ca;
  f.v_er_leak = p.k1 * (s.er - s.ca);
  const double c2 = s.ca * s.ca;
  const double i2 = s.ip3 * s.ip3;
  f.v_er_rel = p.k2 * s.r * c2 * i2 / ((p.k_a * p.k_a + c2) * (p.k_ip3 * p.k_ip3 + i2)) * (s.er - s.ca);
  f.v_serca = p.k3 * s.ca;
  return f;
}

// Written with K_i^2 / (K_i + C^2) as in the model definition.
double ip3r_recovery(double ca, const AdParams& p) { return p.k6 * p.k_i * p.k_i / (p.k_i + ca * ca); }

double ip3r_inactivation(double r, const AdParams& p) { return p.k6 * r; }

AdState ad_rhs(const AdState& s, const AdParams& p, const VgccParams& vg, const CellInputs& in) {
  const auto f = ad_fluxes(s, p, in);
  const double j_vgcc = vgcc_flux(s.gating, in.membrane_voltage, s.ca, vg).j_vgcc;
  AdState d;
  d.ca = j_vgcc + f.v_cce + f.v_ir - f.v_out + f.v_er_leak + f.v_er_rel - f.v_serca;
  d.er = p.beta * (f.v_serca - f.v_er_leak - f.v_er_rel);
  d.r = ip3r_recovery(s.ca, p) - ip3r_inactivation(s.r, p);
  d.ip3 = in.j_prod_rate - p.k9 * s.ip3 + in.ip3_diffusion_in;
  d.gating = gating_rhs(s.gating, in.membrane_voltage);
  return d;
}

HealthyState healthy_resting_default() { return {0.1, 1.5, 0.1}; }

AdState ad_resting_default(double v_mv) {
  AdState s;
  s.ca = 0.1;
  s.er = 1.5;
  s.ip3 = 0.1;
  s.r = 0.5;
  s.gating = gating_steady_state(v_mv);
  return s;
}

}  // namespace astronet
