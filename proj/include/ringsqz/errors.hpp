#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ringsqz {

/// Pump field does not cover a requested detuning.
class CoverageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The generator is singular or unstable: the pump is at or above threshold.
class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Bogoliubov map failed its symplectic or reconstruction gate.
class DecompositionUnreliable : public std::runtime_error {
 public:
  DecompositionUnreliable(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The profile has more than one half-maximum crossing pair.
class AmbiguousFwhm : public std::runtime_error {
 public:
  explicit AmbiguousFwhm(std::vector<double> crossings)
      : std::runtime_error("profile crosses half maximum " + std::to_string(crossings.size()) +
                           " times"),
        crossings_(std::move(crossings)) {}

  const std::vector<double>& crossings() const noexcept { return crossings_; }

 private:
  std::vector<double> crossings_;
};

}  // namespace ringsqz
