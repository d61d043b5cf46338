#pragma once

// Fixed-step RK4 for the intracellular models, plus oscillation analysis.

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "astronet/params.hpp"
#include "astronet/single_cell.hpp"

namespace astronet {

enum class CellModel { Healthy, Alzheimer };

/// A negative concentration was reset to zero (or R reset into [0, 1]).
struct ClampEvent {
  double t = 0.0;
  std::string_view field;
  double value = 0.0;  // value before clamping
};

template <class State>
struct Trajectory {
  std::vector<double> t;
  std::vector<State> states;
  std::vector<ClampEvent> clamps;
};

struct IntegrateOptions {
  double t_span = 0.0;          // s
  double dt = 1e-3;             // s
  std::size_t record_stride = 1;  // keep every n-th step (the final step is always kept)
};

using InputSchedule = std::function<CellInputs(double t)>;

/// Constant-input schedule.
InputSchedule constant_inputs(CellInputs in);

Trajectory<HealthyState> integrate(const HealthyState& s0, const HealthyParams& p,
                                   const IntegrateOptions& opt);

/// Concentrations advance by RK4; gates relax exactly at the stage voltages.
Trajectory<AdState> integrate(const AdState& s0, const AdParams& p, const VgccParams& vg,
                              const InputSchedule& inputs, const IntegrateOptions& opt);

struct ScanOptions {
  double t_span = 400.0;             // s per drive point
  double dt = 5e-3;                  // s
  double transient_fraction = 0.2;   // discarded head of every run
  double amplitude_epsilon = 0.01;   // uM
  double membrane_voltage = -70.0;   // mV (four-pool model)
};

struct ScanPoint {
  double drive = 0.0;
  double ca_min = 0.0;
  double ca_max = 0.0;
  bool oscillating = false;
};

/// The drive is the IP3 production coefficient: Sigma_p of the three-pool
/// model, or a constant IP3 production rate for the four-pool model.
std::vector<ScanPoint> scan_oscillations(CellModel model, const ModelParams& p,
                                         std::span<const double> drives,
                                         const ScanOptions& opt = {});

/// Fixed point at the given drive: a deterministic settling run from the
/// resting default, then Newton polish. Falls back to the settled state when
/// Newton does not converge. Unstable fixed points are returned as found.
HealthyState healthy_equilibrium(const HealthyParams& p, double t_settle = 200.0);
AdState ad_equilibrium(const AdParams& p, const VgccParams& vg, const CellInputs& in,
                       double t_settle = 200.0);

/// Indices of local maxima whose prominence over the preceding trough is at
/// least `min_prominence`.
std::vector<std::size_t> find_peaks(std::span<const double> values, double min_prominence);

/// Coefficient of variation of the gaps between successive peak times;
/// NaN when fewer than three peaks.
double interpeak_cv(std::span<const double> times, std::span<const double> values,
                    double min_prominence);

/// CSV `t,Ca,Er,Ip3`.
void write_trajectory_csv(std::ostream& os, const Trajectory<HealthyState>& tr);
/// CSV `t,Ca,Er,Ip3,R,m_T,h_Tf,h_Ts,m_L,m_N,m_R,h_R`.
void write_trajectory_csv(std::ostream& os, const Trajectory<AdState>& tr);
/// CSV `drive,ca_min,ca_max,oscillating`.
void write_scan_csv(std::ostream& os, std::span<const ScanPoint> points);

}  // namespace astronet
