#include "astronet/comms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "astronet/errors.hpp"
#include "astronet/format.hpp"

namespace astronet {

CommsProbe::CommsProbe(std::span<const CellPools> initial, CellId tx, CellId rx, const ProbeSettings& s)
    : tx_(tx), rx_(rx), s_(s) {
  baseline_.reserve(initial.size());
  for (const auto& c : initial) baseline_.push_back(c.ca);
  ca_ = baseline_;
  peak_ = baseline_;
}

void CommsProbe::observe(const ReactionEvent& e) {
  const bool in_window = e.t >= s_.stimulus_start && e.t < s_.stimulus_start + s_.gain_window;
  const bool diffusion =
      e.channel == Channel::CaGapHH || e.channel == Channel::CaGapHL || e.channel == Channel::CaGapLH;
  for (const auto& d : e.changes()) {
    if (d.pool != Pool::Ca) continue;
    double& x = ca_[d.cell];
    x += d.amount;
    if (e.t < s_.stimulus_start) continue;
    peak_[d.cell] = std::max(peak_[d.cell], x);
    if (d.cell == rx_ && !delay_ && x >= baseline_[rx_] + s_.activation_threshold) {
      delay_ = e.t - s_.stimulus_start;
    }
    if (!in_window) continue;
    if (e.channel == Channel::Stimulus) sent_ += d.amount;
    if (diffusion && d.cell == rx_ && rx_ != tx_) received_ += d.amount;
  }
}

std::size_t CommsProbe::extent(double threshold) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < peak_.size(); ++c) {
    if (peak_[c] > baseline_[c] + threshold) ++n;
  }
  return n;
}

std::vector<double> CommsProbe::peak_excursions() const {
  std::vector<double> out(peak_.size());
  for (std::size_t c = 0; c < peak_.size(); ++c) out[c] = peak_[c] - baseline_[c];
  return out;
}

double CommsProbe::gain_db() const {
  if (!(sent_ > 0.0)) throw UndefinedGain();
  if (!(received_ > 0.0)) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(received_ / sent_);
}

LinkMetrics CommsProbe::metrics() const {
  LinkMetrics m;
  m.propagation_extent = extent(s_.activation_threshold);
  m.molecular_delay = delay_;
  m.channel_gain_db = gain_db();
  return m;
}

namespace {

CommsProbe replay(const EventLog& log, CellId tx, CellId rx, const ProbeSettings& s) {
  if (log.snapshots.empty()) throw std::invalid_argument("event log has no snapshots");
  CommsProbe probe(log.snapshots.front().cells, tx, rx, s);
  for (const auto& e : log.events) probe.observe(e);
  return probe;
}

}  // namespace

std::size_t propagation_extent(const EventLog& log, double threshold, double stimulus_start) {
  ProbeSettings s;
  s.activation_threshold = threshold;
  s.stimulus_start = stimulus_start;
  return replay(log, log.transmitter, log.receiver, s).extent(threshold);
}

std::optional<double> molecular_delay(const EventLog& log, CellId tx, CellId rx, double threshold,
                                      double stimulus_start) {
  ProbeSettings s;
  s.activation_threshold = threshold;
  s.stimulus_start = stimulus_start;
  return replay(log, tx, rx, s).delay();
}

double channel_gain(const EventLog& log, CellId tx, CellId rx, double window, double stimulus_start) {
  if (!(window > 0.0)) throw std::invalid_argument("channel_gain: window must be > 0");
  ProbeSettings s;
  s.stimulus_start = stimulus_start;
  s.gain_window = window;
  return replay(log, tx, rx, s).gain_db();
}

std::string format_delay(const std::optional<double>& d) { return d ? format_double(*d) : std::string{}; }

}  // namespace astronet
