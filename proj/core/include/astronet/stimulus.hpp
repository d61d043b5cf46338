#pragma once

// Transmitter stimulus: an infinite Ca2+ reservoir whose source rate follows a
// waveform. The schedule is piecewise constant; the engine treats every
// segment boundary as a breakpoint.

#include <string_view>
#include <vector>

namespace astronet {

enum class StimulusKind { Burst, Sine, Square };

std::string_view to_string(StimulusKind k);
StimulusKind stimulus_kind_from_string(std::string_view s);  // throws ConfigError

struct StimulusSpec {
  StimulusKind kind = StimulusKind::Burst;
  double frequency_hz = 0.0;
  double amplitude = 0.0;  // uM/s source rate
  double duration = 1.0;   // s
  double start = 0.0;      // s

  bool operator==(const StimulusSpec&) const = default;
};

struct StimulusSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  double rate = 0.0;  // uM/s
};

/// Piecewise-constant source rate at the transmitter. Zero outside segments.
class StimulusSchedule {
 public:
  StimulusSchedule() = default;
  explicit StimulusSchedule(std::vector<StimulusSegment> segments);

  double rate_at(double t) const;
  /// First segment boundary strictly after `t`, or +inf.
  double next_change_after(double t) const;
  const std::vector<StimulusSegment>& segments() const { return segments_; }
  /// Number of segments with a positive rate.
  std::size_t on_phases() const;

 private:
  std::vector<StimulusSegment> segments_;
};

/// Burst: one constant on-phase over [start, start + duration).
/// Square: on for the first half of every period within the duration.
/// Sine: amplitude * (1 + sin(2 pi f (t - start))) / 2, sampled on
/// sub-intervals of at most `sine_resolution` seconds.
StimulusSchedule apply_stimulus(const StimulusSpec& spec, double sine_resolution = 1e-3);

}  // namespace astronet
