#include "astronet/gap_junction.hpp"

#include <algorithm>
#include <cmath>

namespace astronet {

std::string_view to_string(GjState s) {
  switch (s) {
    case GjState::HH: return "HH";
    case GjState::HL: return "HL";
    case GjState::LH: return "LH";
  }
  return "?";
}

GjRates gj_rates(double v_j, const GapJunctionParams& p) {
  return {p.lambda * std::exp(-p.a_alpha * (v_j - p.v0)), p.lambda * std::exp(p.a_alpha * (v_j + p.v0)),
          p.lambda * std::exp(p.a_beta * (v_j - p.v0)), p.lambda * std::exp(-p.a_beta * (v_j + p.v0))};
}

GjProbabilities gj_step(const GjProbabilities& probs, double v_j, double dt, const GapJunctionParams& p) {
  if (!(dt > 0.0)) return probs;
  const auto r = gj_rates(v_j, p);
  // Every outflow coefficient times h must stay <= 1/2.
  const double fastest = std::max({r.alpha1, r.alpha2, r.beta1 + r.beta2});
  const auto substeps = static_cast<long>(std::ceil(dt * fastest * 2.0));
  const long n = std::max(1L, substeps);
  const double h = dt / static_cast<double>(n);

  double hl = probs.p_hl;
  double lh = probs.p_lh;
  for (long i = 0; i < n; ++i) {
    const double hh = 1.0 - hl - lh;
    const double d_hl = r.beta1 * hh - r.alpha1 * hl;
    const double d_lh = r.beta2 * hh - r.alpha2 * lh;
    hl += h * d_hl;
    lh += h * d_lh;
  }
  hl = std::clamp(hl, 0.0, 1.0);
  lh = std::clamp(lh, 0.0, 1.0 - hl);
  return {1.0 - hl - lh, hl, lh};
}

GjProbabilities gj_stationary(double v_j, const GapJunctionParams& p) {
  const auto r = gj_rates(v_j, p);
  const double hl_per_hh = r.beta1 / r.alpha1;
  const double lh_per_hh = r.beta2 / r.alpha2;
  const double hh = 1.0 / (1.0 + hl_per_hh + lh_per_hh);
  const double hl = hh * hl_per_hh;
  const double lh = hh * lh_per_hh;
  return {1.0 - hl - lh, hl, lh};
}

GjState gj_sample(const GjProbabilities& probs, double u01) {
  if (u01 < probs.p_hh) return GjState::HH;
  if (u01 < probs.p_hh + probs.p_hl) return GjState::HL;
  return GjState::LH;
}

}  // namespace astronet
