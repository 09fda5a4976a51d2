#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vw {

/// Argument outside the mathematical domain of a kernel or formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or invalid scenario configuration. `line` is 0 when the problem
/// is not tied to a particular line of input text.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

/// Two point vortices came closer than the collision threshold.
class CollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time integration failed; names the step that failed.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t step, double time, const std::string& reason)
      : std::runtime_error("step " + std::to_string(step) + " (t=" + std::to_string(time) +
                           "): " + reason),
        step_(step),
        time_(time),
        reason_(reason) {}

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t step_;
  double time_;
  std::string reason_;
};

}  // namespace vw
