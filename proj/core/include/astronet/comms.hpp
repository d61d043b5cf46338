#pragma once

// Single-hop link metrics computed from an engine event stream: propagation
// extent, molecular delay at the receiver and channel gain.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "astronet/engine.hpp"

namespace astronet {

struct LinkMetrics {
  std::size_t propagation_extent = 0;   // cells, transmitter included
  std::optional<double> molecular_delay;  // s; nullopt = never crossed
  double channel_gain_db = -std::numeric_limits<double>::infinity();
};

struct ProbeSettings {
  double activation_threshold = 0.05;  // uM above baseline
  double stimulus_start = 0.0;         // s
  double gain_window = 1.0;            // s, measured from stimulus start
};

/// Incremental metric accumulator. Feed it every firing of a run in order;
/// it keeps its own copy of cytosolic Ca. Replaying a stored EventLog through
/// it and streaming a live run give identical results.
class CommsProbe {
 public:
  CommsProbe(std::span<const CellPools> initial, CellId tx, CellId rx, const ProbeSettings& s);

  void observe(const ReactionEvent& e);

  /// Cells (the transmitter included) whose peak Ca at or after the stimulus
  /// start exceeds baseline + threshold (baseline = initial Ca).
  std::size_t extent(double threshold) const;
  /// Peak Ca above baseline since the stimulus start, one per cell.
  std::vector<double> peak_excursions() const;
  std::optional<double> delay() const { return delay_; }
  double sent() const { return sent_; }
  double received() const { return received_; }
  /// 10 log10(max(received, 0) / sent); -inf when nothing arrived.
  /// Throws UndefinedGain when nothing was sent.
  double gain_db() const;

  LinkMetrics metrics() const;

 private:
  std::vector<double> baseline_;
  std::vector<double> ca_;
  std::vector<double> peak_;
  CellId tx_;
  CellId rx_;
  ProbeSettings s_;
  std::optional<double> delay_;
  double sent_ = 0.0;
  double received_ = 0.0;
};

std::size_t propagation_extent(const EventLog& log, double threshold, double stimulus_start = 0.0);
std::optional<double> molecular_delay(const EventLog& log, CellId tx, CellId rx, double threshold,
                                      double stimulus_start);
double channel_gain(const EventLog& log, CellId tx, CellId rx, double window, double stimulus_start);

/// Formats a delay for CSV; empty when infinite.
std::string format_delay(const std::optional<double>& d);

}  // namespace astronet
