#pragma once

#include <stdexcept>
#include <string>

namespace wellcascade {

/// Input outside the mathematical domain of an operation (negative energy,
/// zero splitting, degenerate geometry, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure ran but could not produce an acceptable answer.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No resonant doublet within the configured window around the incoming energy.
class ResonanceNotFound : public ComputationError {
 public:
  ResonanceNotFound(std::string pair_name, double incoming_eV, double window_eV);

  const std::string& pair_name() const { return pair_name_; }
  double incoming_eV() const { return incoming_eV_; }

 private:
  std::string pair_name_;
  double incoming_eV_;
};

/// Calibration finished but the best candidate misses the targets by more than
/// the accepted misfit. The best candidate is kept so callers can inspect it.
class CalibrationError : public ComputationError {
 public:
  CalibrationError(double best_value, double best_misfit, double threshold);

  double best_value() const { return best_value_; }
  double best_misfit() const { return best_misfit_; }

 private:
  double best_value_;
  double best_misfit_;
};

/// Invalid configuration text or values. `field` names the offending key
/// ("section.key") when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace wellcascade
