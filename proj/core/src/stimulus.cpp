#include "astronet/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "astronet/errors.hpp"

namespace astronet {

std::string_view to_string(StimulusKind k) {
  switch (k) {
    case StimulusKind::Burst: return "burst";
    case StimulusKind::Sine: return "sine";
    case StimulusKind::Square: return "square";
  }
  return "?";
}

StimulusKind stimulus_kind_from_string(std::string_view s) {
  if (s == "burst") return StimulusKind::Burst;
  if (s == "sine") return StimulusKind::Sine;
  if (s == "square") return StimulusKind::Square;
  throw ConfigError("stimulus.kind", "expected burst|sine|square, got '" + std::string(s) + "'");
}

StimulusSchedule::StimulusSchedule(std::vector<StimulusSegment> segments) : segments_(std::move(segments)) {}

double StimulusSchedule::rate_at(double t) const {
  // Segments are sorted and disjoint.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const StimulusSegment& s) { return x < s.t1; });
  if (it == segments_.end() || t < it->t0) return 0.0;
  return it->rate;
}

double StimulusSchedule::next_change_after(double t) const {
  for (const auto& s : segments_) {
    if (s.t0 > t) return s.t0;
    if (s.t1 > t) return s.t1;
  }
  return std::numeric_limits<double>::infinity();
}

std::size_t StimulusSchedule::on_phases() const {
  return static_cast<std::size_t>(
      std::count_if(segments_.begin(), segments_.end(), [](const auto& s) { return s.rate > 0.0; }));
}

StimulusSchedule apply_stimulus(const StimulusSpec& spec, double sine_resolution) {
  std::vector<StimulusSegment> segs;
  if (!(spec.amplitude > 0.0) || !(spec.duration > 0.0)) return StimulusSchedule{};
  const double t_end = spec.start + spec.duration;

  switch (spec.kind) {
    case StimulusKind::Burst:
      segs.push_back({spec.start, t_end, spec.amplitude});
      break;
    case StimulusKind::Square: {
      if (!(spec.frequency_hz > 0.0)) {
        segs.push_back({spec.start, t_end, spec.amplitude});
        break;
      }
      const double period = 1.0 / spec.frequency_hz;
      // Integer cycle index keeps boundaries free of accumulated rounding.
      const auto cycles = static_cast<long>(std::ceil(spec.duration * spec.frequency_hz - 1e-9));
      for (long c = 0; c < cycles; ++c) {
        const double t0 = spec.start + static_cast<double>(c) * period;
        const double t1 = std::min(t0 + period / 2.0, t_end);
        if (t1 > t0) segs.push_back({t0, t1, spec.amplitude});
      }
      break;
    }
    case StimulusKind::Sine: {
      const double step = spec.frequency_hz > 0.0 ? std::min(sine_resolution, 1.0 / (64.0 * spec.frequency_hz))
                                                  : spec.duration;
      const auto n = static_cast<long>(std::ceil(spec.duration / step - 1e-9));
      for (long i = 0; i < n; ++i) {
        const double t0 = spec.start + static_cast<double>(i) * step;
        const double t1 = std::min(spec.start + static_cast<double>(i + 1) * step, t_end);
        const double mid = 0.5 * (t0 + t1) - spec.start;
        const double rate =
            spec.amplitude * 0.5 * (1.0 + std::sin(2.0 * std::numbers::pi * spec.frequency_hz * mid));
        if (rate > 0.0) segs.push_back({t0, t1, rate});
      }
      break;
    }
  }
  return StimulusSchedule(std::move(segs));
}

}  // namespace astronet
