#include "astronet/vgcc.hpp"

#include <algorithm>
#include <cmath>

namespace astronet {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(x)); }

double bell(double amplitude, double v, double centre, double width, double floor) {
  const double u = (v + centre) / width;
  return amplitude * std::exp(-u * u) + floor;
}

// Nernst potential blows up at zero cytosolic Ca2+.
constexpr double kMinCytosolicCa = 1e-9;  // uM

double relax(double x, double x_inf, double tau_ms, double dt) {
  return x_inf + (x - x_inf) * std::exp(-dt / (tau_ms * 1e-3));
}

}  // namespace

namespace gates {

double m_t_inf(double v) { return sigmoid(-(v + 63.5) / 1.5); }
double h_t_inf(double v) { return sigmoid((v + 76.2) / 3.0); }
double m_l_inf(double v) { return sigmoid(-(v + 50.0) / 3.0); }
double m_n_inf(double v) { return sigmoid(-(v + 45.0) / 7.0); }
double m_r_inf(double v) { return sigmoid(-(v + 10.0) / 10.0); }
double h_r_inf(double v) { return sigmoid((v + 48.0) / 5.0); }

double tau_m_t(double v) { return bell(65.0, v, 68.0, 6.0, 12.0); }
double tau_h_tf(double v) { return bell(50.0, v, 72.0, 10.0, 10.0); }
double tau_h_ts(double v) { return bell(400.0, v, 100.0, 10.0, 400.0); }
double tau_m_l(double v) { return bell(18.0, v, 45.0, 20.0, 1.5); }
double tau_m_n(double v) { return bell(18.0, v, 70.0, 25.0, 0.30); }
double tau_m_r(double v) { return bell(0.1, v, 62.0, 13.0, 0.05); }
double tau_h_r(double v) { return bell(0.5, v, 55.6, 18.0, 0.5); }

// Half-saturations are tabulated in mM: 0.00045 mM = 0.45 uM.
double h_l(double ca_um) { return 0.45 / (0.45 + std::max(ca_um, 0.0)); }
double h_n(double ca_um) { return 0.1 / (0.1 + std::max(ca_um, 0.0)); }

}  // namespace gates

VgccGating gating_steady_state(double v) {
  using namespace gates;
  return {m_t_inf(v), h_t_inf(v), h_t_inf(v), m_l_inf(v), m_n_inf(v), m_r_inf(v), h_r_inf(v)};
}

VgccGatingRate gating_rhs(const VgccGating& g, double v) {
  using namespace gates;
  const auto rate = [](double x, double x_inf, double tau_ms) { return (x_inf - x) / (tau_ms * 1e-3); };
  return {rate(g.m_t, m_t_inf(v), tau_m_t(v)),  rate(g.h_tf, h_t_inf(v), tau_h_tf(v)),
          rate(g.h_ts, h_t_inf(v), tau_h_ts(v)), rate(g.m_l, m_l_inf(v), tau_m_l(v)),
          rate(g.m_n, m_n_inf(v), tau_m_n(v)),  rate(g.m_r, m_r_inf(v), tau_m_r(v)),
          rate(g.h_r, h_r_inf(v), tau_h_r(v))};
}

VgccGating gating_relax(const VgccGating& g, double v, double dt) {
  using namespace gates;
  return {relax(g.m_t, m_t_inf(v), tau_m_t(v), dt),  relax(g.h_tf, h_t_inf(v), tau_h_tf(v), dt),
          relax(g.h_ts, h_t_inf(v), tau_h_ts(v), dt), relax(g.m_l, m_l_inf(v), tau_m_l(v), dt),
          relax(g.m_n, m_n_inf(v), tau_m_n(v), dt),  relax(g.m_r, m_r_inf(v), tau_m_r(v), dt),
          relax(g.h_r, h_r_inf(v), tau_h_r(v), dt)};
}

double gating_max_tau(double v) {
  using namespace gates;
  return 1e-3 * std::max({tau_m_t(v), tau_h_tf(v), tau_h_ts(v), tau_m_l(v), tau_m_n(v),
                          tau_m_r(v), tau_h_r(v)});
}

double calcium_reversal_mv(double ca_um, const VgccParams& p) {
  const double ca_in = std::max(ca_um, kMinCytosolicCa);
  return 1e3 * p.gas_constant * p.temperature / (p.z * p.faraday) * std::log(p.ca_out / ca_in);
}

VgccCurrent vgcc_flux(const VgccGating& g, double v, double ca_um, const VgccParams& p) {
  const double drive = v - calcium_reversal_mv(ca_um, p);
  // pS * mV = 1e-3 pA
  constexpr double kToPicoAmp = 1e-3;
  VgccCurrent c;
  c.i_t = kToPicoAmp * p.g_t * g.m_t * (g.h_tf + 0.04 * g.h_ts) * drive;
  c.i_l = kToPicoAmp * p.g_l * g.m_l * gates::h_l(ca_um) * drive;
  c.i_n = kToPicoAmp * p.g_n * g.m_n * gates::h_n(ca_um) * drive;
  c.i_r = kToPicoAmp * p.g_r * g.m_r * g.h_r * drive;
  c.i_total = c.i_t + c.i_l + c.i_n + c.i_r;
  // A / (C/mol * L) = mol/(L s); scale to uM/s.
  c.j_vgcc = -(c.i_total * 1e-12) / (p.z * p.faraday * p.v_ast) * 1e6;
  return c;
}

}  // namespace astronet
