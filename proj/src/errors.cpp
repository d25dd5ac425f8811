#include "wellcascade/errors.hpp"

#include <sstream>

namespace wellcascade {

namespace {

std::string resonance_message(const std::string& pair, double incoming, double window) {
  std::ostringstream os;
  os << "resonance not found for pair " << pair << ": no doublet within " << window
     << " eV of incoming energy " << incoming << " eV";
  return os.str();
}

std::string calibration_message(double value, double misfit, double threshold) {
  std::ostringstream os;
  os << "calibration failed: best candidate " << value << " has misfit " << misfit
     << " eV (threshold " << threshold << " eV)";
  return os.str();
}

}  // namespace

ResonanceNotFound::ResonanceNotFound(std::string pair_name, double incoming_eV,
                                     double window_eV)
    : ComputationError(resonance_message(pair_name, incoming_eV, window_eV)),
      pair_name_(std::move(pair_name)),
      incoming_eV_(incoming_eV) {}

CalibrationError::CalibrationError(double best_value, double best_misfit, double threshold)
    : ComputationError(calibration_message(best_value, best_misfit, threshold)),
      best_value_(best_value),
      best_misfit_(best_misfit) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      field_(std::move(field)) {}

}  // namespace wellcascade
