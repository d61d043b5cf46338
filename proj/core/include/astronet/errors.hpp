#pragma once

#include <stdexcept>
#include <string>

namespace astronet {

/// Malformed or out-of-range configuration. `key()` is the dotted key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// The integrator produced a non-finite state.
class IntegrationDiverged : public std::runtime_error {
 public:
  explicit IntegrationDiverged(double t)
      : std::runtime_error("integration diverged at t=" + std::to_string(t) + " s"), t_(t) {}

  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Channel gain requested for a window in which the transmitter sent nothing.
class UndefinedGain : public std::runtime_error {
 public:
  UndefinedGain() : std::runtime_error("channel gain undefined: no molecules sent in window") {}
};

}  // namespace astronet
