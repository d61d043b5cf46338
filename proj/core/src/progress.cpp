#include "astronet/progress.hpp"

#include <cstdio>

#include "astronet/format.hpp"

namespace astronet {

namespace {
// Clock reads are throttled to one per this many update() calls.
constexpr std::uint32_t kCheckEvery = 4096;

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}
}  // namespace

double ProgressReporter::steady_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

ProgressReporter::ProgressReporter(std::ostream& os, double cadence_s, bool quiet, std::string label, Clock clock)
    : os_(os),
      cadence_(cadence_s),
      enabled_(!quiet && cadence_s > 0.0),
      label_(std::move(label)),
      clock_(std::move(clock)),
      start_(clock_()),
      last_(start_) {}

bool ProgressReporter::due() {
  if (!enabled_) return false;
  if (countdown_ > 0) {
    --countdown_;
    return false;
  }
  countdown_ = kCheckEvery - 1;
  const double now = clock_();
  if (now - last_ < cadence_) return false;
  last_ = now;
  return true;
}

void ProgressReporter::line(const std::string& body) {
  os_ << (label_.empty() ? "" : label_ + ": ") << body << '\n';
  os_.flush();
  ++lines_;
}

void ProgressReporter::update(double sim_t, std::uint64_t events) {
  if (!due()) return;
  line("sim_t=" + fixed(sim_t, 3) + " s wall=" + fixed(last_ - start_, 1) + " s events=" + std::to_string(events));
}

void ProgressReporter::update_runs(std::size_t done, std::size_t total) {
  if (!enabled_) return;
  countdown_ = 0;  // runs are coarse; check the clock every time
  if (done < total && !due()) return;
  if (done == total) last_ = clock_();
  line("runs " + std::to_string(done) + "/" + std::to_string(total) + " wall=" + fixed(last_ - start_, 1) + " s");
}

void ProgressReporter::finish(double sim_t, std::uint64_t events) {
  if (!enabled_) return;
  const double now = clock_();
  line("done sim_t=" + fixed(sim_t, 3) + " s wall=" + fixed(now - start_, 1) + " s events=" + std::to_string(events));
}

}  // namespace astronet
