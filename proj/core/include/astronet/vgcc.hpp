#pragma once

// Voltage-gated Ca2+ channels (T, L, N, R types). Gate time constants are
// tabulated in ms; gating_rhs returns derivatives per second.

#include "astronet/params.hpp"

namespace astronet {

/// Activation / inactivation gates, each in [0, 1]. h_L and h_N are algebraic
/// in cytosolic Ca2+ and therefore not stored.
struct VgccGating {
  double m_t = 0.0;
  double h_tf = 0.0;
  double h_ts = 0.0;
  double m_l = 0.0;
  double m_n = 0.0;
  double m_r = 0.0;
  double h_r = 0.0;

  bool operator==(const VgccGating&) const = default;

  template <class F>
  void for_each(F&& f) {
    f(m_t), f(h_tf), f(h_ts), f(m_l), f(m_n), f(m_r), f(h_r);
  }
  template <class F>
  void for_each(F&& f) const {
    f(m_t), f(h_tf), f(h_ts), f(m_l), f(m_n), f(m_r), f(h_r);
  }
};

namespace gates {

double m_t_inf(double v);
double h_t_inf(double v);
double m_l_inf(double v);
double m_n_inf(double v);
double m_r_inf(double v);
double h_r_inf(double v);

// Time constants in ms.
double tau_m_t(double v);
double tau_h_tf(double v);
double tau_h_ts(double v);
double tau_m_l(double v);
double tau_m_n(double v);
double tau_m_r(double v);
double tau_h_r(double v);

/// Ca-dependent inactivation; half-saturations 0.00045 mM and 0.0001 mM.
double h_l(double ca_um);
double h_n(double ca_um);

}  // namespace gates

/// Gates at their voltage-dependent steady state.
VgccGating gating_steady_state(double v_mv);

/// Same shape as VgccGating; each field is its per-second derivative.
using VgccGatingRate = VgccGating;

/// dx/dt = (x_inf(V) - x) / tau_x(V) for every stored gate.
VgccGatingRate gating_rhs(const VgccGating& g, double v_mv);

/// Exact relaxation over `dt` seconds at constant V.
VgccGating gating_relax(const VgccGating& g, double v_mv, double dt);

/// Largest gate time constant at `v_mv`, in seconds.
double gating_max_tau(double v_mv);

/// Nernst reversal potential for Ca2+, mV.
double calcium_reversal_mv(double ca_um, const VgccParams& p);

struct VgccCurrent {
  double i_t = 0.0;     // pA
  double i_l = 0.0;
  double i_n = 0.0;
  double i_r = 0.0;
  double i_total = 0.0; // pA
  double j_vgcc = 0.0;  // uM/s
};

VgccCurrent vgcc_flux(const VgccGating& g, double v_mv, double ca_um, const VgccParams& p);

}  // namespace astronet
