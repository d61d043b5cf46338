#pragma once

// Periodic status lines on a wall-clock cadence.

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace astronet {

class ProgressReporter {
 public:
  using Clock = std::function<double()>;  // seconds, monotonic

  /// cadence <= 0 or quiet disables every line. `label` prefixes each line.
  ProgressReporter(std::ostream& os, double cadence_s, bool quiet, std::string label = {},
                   Clock clock = steady_seconds);

  bool enabled() const { return enabled_; }

  /// Cheap to call on every event; prints when a cadence period has passed.
  void update(double sim_t, std::uint64_t events);
  /// Matrix-style progress: `done` of `total` runs.
  void update_runs(std::size_t done, std::size_t total);
  /// Final line, printed whenever reporting is enabled.
  void finish(double sim_t, std::uint64_t events);

  std::size_t lines() const { return lines_; }

  static double steady_seconds();

 private:
  bool due();
  void line(const std::string& body);

  std::ostream& os_;
  double cadence_;
  bool enabled_;
  std::string label_;
  Clock clock_;
  double start_;
  double last_;
  std::uint32_t countdown_ = 0;
  std::size_t lines_ = 0;
};

}  // namespace astronet
