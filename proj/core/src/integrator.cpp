#include "astronet/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "astronet/errors.hpp"
#include "astronet/format.hpp"

namespace astronet {

namespace {

std::size_t step_count(const IntegrateOptions& opt) {
  if (!(opt.dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (opt.t_span < 0.0) throw std::invalid_argument("integrate: t_span must be >= 0");
  return static_cast<std::size_t>(std::floor(opt.t_span / opt.dt + 1e-9));
}

HealthyState axpy(const HealthyState& s, double h, const HealthyState& d) {
  return {s.ca + h * d.ca, s.er + h * d.er, s.ip3 + h * d.ip3};
}

void clamp_nonneg(double& x, std::string_view name, double t, std::vector<ClampEvent>& log) {
  if (x < 0.0) {
    log.push_back({t, name, x});
    x = 0.0;
  }
}

bool finite(const HealthyState& s) {
  return std::isfinite(s.ca) && std::isfinite(s.er) && std::isfinite(s.ip3);
}

bool finite(const AdState& s) {
  bool ok = std::isfinite(s.ca) && std::isfinite(s.er) && std::isfinite(s.ip3) && std::isfinite(s.r);
  s.gating.for_each([&](double x) { ok = ok && std::isfinite(x); });
  return ok;
}

// Concentration part of the four-pool state, advanced by RK4.
struct AdPools {
  double ca, er, ip3, r;
};

AdPools pools_of(const AdState& s) { return {s.ca, s.er, s.ip3, s.r}; }

AdState with_pools(AdState s, const AdPools& p) {
  s.ca = p.ca;
  s.er = p.er;
  s.ip3 = p.ip3;
  s.r = p.r;
  return s;
}

AdPools axpy(const AdPools& s, double h, const AdPools& d) {
  return {s.ca + h * d.ca, s.er + h * d.er, s.ip3 + h * d.ip3, s.r + h * d.r};
}

template <class State>
void maybe_record(Trajectory<State>& traj, std::size_t k, std::size_t n, std::size_t stride, double t,
                  const State& s) {
  if (k % stride == 0 || k == n) {
    traj.t.push_back(t);
    traj.states.push_back(s);
  }
}

}  // namespace

InputSchedule constant_inputs(CellInputs in) {
  return [in](double) { return in; };
}

Trajectory<HealthyState> integrate(const HealthyState& s0, const HealthyParams& p,
                                   const IntegrateOptions& opt) {
  const std::size_t n = step_count(opt);
  const std::size_t stride = std::max<std::size_t>(opt.record_stride, 1);
  const double h = opt.dt;
  Trajectory<HealthyState> traj;
  traj.t.reserve(n / stride + 2);
  traj.states.reserve(n / stride + 2);
  traj.t.push_back(0.0);
  traj.states.push_back(s0);

  HealthyState s = s0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) * h;
    const auto k1 = healthy_rhs(s, p);
    const auto k2 = healthy_rhs(axpy(s, h / 2, k1), p);
    const auto k3 = healthy_rhs(axpy(s, h / 2, k2), p);
    const auto k4 = healthy_rhs(axpy(s, h, k3), p);
    s.ca += h / 6 * (k1.ca + 2 * k2.ca + 2 * k3.ca + k4.ca);
    s.er += h / 6 * (k1.er + 2 * k2.er + 2 * k3.er + k4.er);
    s.ip3 += h / 6 * (k1.ip3 + 2 * k2.ip3 + 2 * k3.ip3 + k4.ip3);
    if (!finite(s)) throw IntegrationDiverged(t);
    clamp_nonneg(s.ca, "Ca", t, traj.clamps);
    clamp_nonneg(s.er, "Er", t, traj.clamps);
    clamp_nonneg(s.ip3, "Ip3", t, traj.clamps);
    maybe_record(traj, k, n, stride, t, s);
  }
  return traj;
}

Trajectory<AdState> integrate(const AdState& s0, const AdParams& p, const VgccParams& vg,
                              const InputSchedule& inputs, const IntegrateOptions& opt) {
  const std::size_t n = step_count(opt);
  const std::size_t stride = std::max<std::size_t>(opt.record_stride, 1);
  const double h = opt.dt;
  Trajectory<AdState> traj;
  traj.t.reserve(n / stride + 2);
  traj.states.reserve(n / stride + 2);
  traj.t.push_back(0.0);
  traj.states.push_back(s0);

  AdState s = s0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t0 = static_cast<double>(k - 1) * h;
    const double t = static_cast<double>(k) * h;
    const CellInputs in0 = inputs(t0);
    const CellInputs in_mid = inputs(t0 + h / 2);
    const CellInputs in1 = inputs(t);

    const VgccGating g_mid = gating_relax(s.gating, in_mid.membrane_voltage, h / 2);
    const VgccGating g_end = gating_relax(g_mid, in1.membrane_voltage, h / 2);
    auto rate = [&](const AdPools& x, const VgccGating& g, const CellInputs& in) {
      AdState st = with_pools(s, x);
      st.gating = g;
      return pools_of(ad_rhs(st, p, vg, in));
    };
    const AdPools x = pools_of(s);
    const auto k1 = rate(x, s.gating, in0);
    const auto k2 = rate(axpy(x, h / 2, k1), g_mid, in_mid);
    const auto k3 = rate(axpy(x, h / 2, k2), g_mid, in_mid);
    const auto k4 = rate(axpy(x, h, k3), g_end, in1);
    AdPools next{x.ca + h / 6 * (k1.ca + 2 * k2.ca + 2 * k3.ca + k4.ca),
                 x.er + h / 6 * (k1.er + 2 * k2.er + 2 * k3.er + k4.er),
                 x.ip3 + h / 6 * (k1.ip3 + 2 * k2.ip3 + 2 * k3.ip3 + k4.ip3),
                 x.r + h / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r)};
    s = with_pools(s, next);
    s.gating = g_end;
    if (!finite(s)) throw IntegrationDiverged(t);
    clamp_nonneg(s.ca, "Ca", t, traj.clamps);
    clamp_nonneg(s.er, "Er", t, traj.clamps);
    clamp_nonneg(s.ip3, "Ip3", t, traj.clamps);
    clamp_nonneg(s.r, "R", t, traj.clamps);
    if (s.r > 1.0) {
      traj.clamps.push_back({t, "R", s.r});
      s.r = 1.0;
    }
    maybe_record(traj, k, n, stride, t, s);
  }
  return traj;
}

std::vector<ScanPoint> scan_oscillations(CellModel model, const ModelParams& p,
                                         std::span<const double> drives, const ScanOptions& opt) {
  if (drives.empty()) throw std::invalid_argument("scan_oscillations: empty drive range");
  std::vector<ScanPoint> out;
  out.reserve(drives.size());
  const IntegrateOptions iopt{opt.t_span, opt.dt, 1};
  const double t_discard = opt.transient_fraction * opt.t_span;

  // Every drive point starts from the undriven fixed point, so the result does
  // not depend on an arbitrary seed state.
  HealthyParams h0 = p.healthy;
  h0.sigma_p = 0.0;
  CellInputs in0;
  in0.membrane_voltage = opt.membrane_voltage;
  const HealthyState healthy_start =
      model == CellModel::Healthy ? healthy_equilibrium(h0, 200.0) : HealthyState{};
  const AdState ad_start =
      model == CellModel::Alzheimer ? ad_equilibrium(p.pools, p.vgcc, in0, 200.0) : AdState{};

  for (const double drive : drives) {
    ScanPoint pt;
    pt.drive = drive;
    pt.ca_min = std::numeric_limits<double>::infinity();
    pt.ca_max = -std::numeric_limits<double>::infinity();
    auto observe = [&](double t, double ca) {
      if (t < t_discard) return;
      pt.ca_min = std::min(pt.ca_min, ca);
      pt.ca_max = std::max(pt.ca_max, ca);
    };
    if (model == CellModel::Healthy) {
      HealthyParams hp = p.healthy;
      hp.sigma_p = drive;
      const auto traj = integrate(healthy_start, hp, iopt);
      for (std::size_t i = 0; i < traj.t.size(); ++i) observe(traj.t[i], traj.states[i].ca);
    } else {
      CellInputs in;
      in.membrane_voltage = opt.membrane_voltage;
      in.j_prod_rate = drive;
      const auto traj = integrate(ad_start, p.pools, p.vgcc, constant_inputs(in), iopt);
      for (std::size_t i = 0; i < traj.t.size(); ++i) observe(traj.t[i], traj.states[i].ca);
    }
    pt.oscillating = (pt.ca_max - pt.ca_min) > opt.amplitude_epsilon;
    out.push_back(pt);
  }
  return out;
}

namespace {

// Newton iteration with a forward-difference Jacobian on up to four unknowns.
// Returns false when the iteration stalls or leaves the non-negative orthant.
template <std::size_t N, class F>
bool newton_polish(std::array<double, N>& x, F&& f) {
  for (int iter = 0; iter < 50; ++iter) {
    const auto r = f(x);
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    if (rmax < 1e-12) return true;
    std::array<std::array<double, N + 1>, N> a{};
    for (std::size_t j = 0; j < N; ++j) {
      auto xp = x;
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      xp[j] += h;
      const auto rp = f(xp);
      for (std::size_t i = 0; i < N; ++i) a[i][j] = (rp[i] - r[i]) / h;
    }
    for (std::size_t i = 0; i < N; ++i) a[i][N] = -r[i];
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t piv = c;
      for (std::size_t i = c + 1; i < N; ++i)
        if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
      if (std::abs(a[piv][c]) < 1e-300) return false;
      std::swap(a[c], a[piv]);
      for (std::size_t i = 0; i < N; ++i) {
        if (i == c) continue;
        const double m = a[i][c] / a[c][c];
        for (std::size_t j = c; j <= N; ++j) a[i][j] -= m * a[c][j];
      }
    }
    for (std::size_t i = 0; i < N; ++i) {
      x[i] += a[i][N] / a[i][i];
      if (!std::isfinite(x[i]) || x[i] < 0.0) return false;
    }
  }
  return false;
}

}  // namespace

HealthyState healthy_equilibrium(const HealthyParams& p, double t_settle) {
  const auto traj = integrate(healthy_resting_default(), p, {t_settle, 5e-3, 1u << 30});
  const HealthyState settled = traj.states.back();
  std::array<double, 3> x{settled.ca, settled.er, settled.ip3};
  const bool ok = newton_polish(x, [&](const std::array<double, 3>& v) {
    const auto d = healthy_rhs({v[0], v[1], v[2]}, p);
    return std::array<double, 3>{d.ca, d.er, d.ip3};
  });
  return ok ? HealthyState{x[0], x[1], x[2]} : settled;
}

AdState ad_equilibrium(const AdParams& p, const VgccParams& vg, const CellInputs& in, double t_settle) {
  const auto traj = integrate(ad_resting_default(in.membrane_voltage), p, vg, constant_inputs(in),
                              {t_settle, 5e-3, 1u << 30});
  AdState s = traj.states.back();
  s.gating = gating_steady_state(in.membrane_voltage);
  std::array<double, 4> x{s.ca, s.er, s.ip3, s.r};
  const bool ok = newton_polish(x, [&](const std::array<double, 4>& v) {
    AdState t = s;
    t.ca = v[0];
    t.er = v[1];
    t.ip3 = v[2];
    t.r = v[3];
    const auto d = ad_rhs(t, p, vg, in);
    return std::array<double, 4>{d.ca, d.er, d.ip3, d.r};
  });
  if (ok && x[3] <= 1.0) {
    s.ca = x[0];
    s.er = x[1];
    s.ip3 = x[2];
    s.r = x[3];
  }
  return s;
}

std::vector<std::size_t> find_peaks(std::span<const double> values, double min_prominence) {
  std::vector<std::size_t> peaks;
  if (values.empty()) return peaks;
  bool rising = false;
  double lo = values[0];
  double hi = values[0];
  std::size_t hi_idx = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double v = values[i];
    if (rising) {
      if (v > hi) {
        hi = v;
        hi_idx = i;
      } else if (v < hi - min_prominence) {
        peaks.push_back(hi_idx);
        rising = false;
        lo = v;
      }
    } else {
      if (v < lo) {
        lo = v;
      } else if (v > lo + min_prominence) {
        rising = true;
        hi = v;
        hi_idx = i;
      }
    }
  }
  return peaks;
}

double interpeak_cv(std::span<const double> times, std::span<const double> values, double min_prominence) {
  const auto peaks = find_peaks(values, min_prominence);
  if (peaks.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> gaps;
  gaps.reserve(peaks.size() - 1);
  for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(times[peaks[i]] - times[peaks[i - 1]]);
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size() - 1);
  return std::sqrt(var) / mean;
}

void write_trajectory_csv(std::ostream& os, const Trajectory<HealthyState>& tr) {
  os << "t,Ca,Er,Ip3\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const auto& s = tr.states[i];
    os << format_double(tr.t[i]) << ',' << format_double(s.ca) << ',' << format_double(s.er) << ','
       << format_double(s.ip3) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory<AdState>& tr) {
  os << "t,Ca,Er,Ip3,R,m_T,h_Tf,h_Ts,m_L,m_N,m_R,h_R\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const auto& s = tr.states[i];
    const auto& g = s.gating;
    os << format_double(tr.t[i]);
    for (double x : {s.ca, s.er, s.ip3, s.r, g.m_t, g.h_tf, g.h_ts, g.m_l, g.m_n, g.m_r, g.h_r})
      os << ',' << format_double(x);
    os << '\n';
  }
}

void write_scan_csv(std::ostream& os, std::span<const ScanPoint> points) {
  os << "drive,ca_min,ca_max,oscillating\n";
  for (const auto& p : points) {
    os << format_double(p.drive) << ',' << format_double(p.ca_min) << ',' << format_double(p.ca_max) << ','
       << (p.oscillating ? 1 : 0) << '\n';
  }
}

}  // namespace astronet
