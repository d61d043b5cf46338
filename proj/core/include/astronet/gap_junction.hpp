#pragma once

// Two-gate voltage-sensitive gap junction. States HH, HL, LH; LL is neglected.

#include <cstdint>
#include <random>
#include <string_view>

#include "astronet/params.hpp"

namespace astronet {

enum class GjState : std::uint8_t { HH = 0, HL = 1, LH = 2 };

std::string_view to_string(GjState s);

struct GjProbabilities {
  double p_hh = 1.0;
  double p_hl = 0.0;
  double p_lh = 0.0;

  double operator[](GjState s) const {
    return s == GjState::HH ? p_hh : (s == GjState::HL ? p_hl : p_lh);
  }
  bool operator==(const GjProbabilities&) const = default;
};

struct GjEdgeState {
  GjProbabilities probs;
  double v_j = 0.0;  // mV
  GjState sampled_state = GjState::HH;
};

struct GjRates {
  double alpha1 = 0.0;  // 1/s
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

GjRates gj_rates(double v_j, const GapJunctionParams& p);

/// Closing HH->HL at beta1, HH->LH at beta2; reopening HL->HH at alpha1 and
/// LH->HH at alpha2. Explicit Euler with internal sub-steps small enough that
/// every probability stays in [0, 1].
GjProbabilities gj_step(const GjProbabilities& probs, double v_j, double dt, const GapJunctionParams& p);

/// Fixed point of gj_step at constant junctional voltage.
GjProbabilities gj_stationary(double v_j, const GapJunctionParams& p);

/// Categorical draw from `probs` using one uniform variate in [0, 1).
GjState gj_sample(const GjProbabilities& probs, double u01);

template <class Rng>
GjState gj_sample(const GjProbabilities& probs, Rng& rng) {
  return gj_sample(probs, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

}  // namespace astronet
