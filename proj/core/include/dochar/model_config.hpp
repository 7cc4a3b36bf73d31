#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dochar/operator_models.hpp"

namespace dochar {

/// Model parameters shared by the command-line tools, loadable from JSON.
/// Unknown keys are rejected so that typos fail loudly.
struct ModelConfig {
  int k = 1;
  double a0 = 1.0;
  /// "constant", "polynomial" or "flat".
  std::string coeff_kind = "constant";
  /// Taylor coefficients of a - a(0); entry m multiplies x^m, entry 0 is 0.
  std::vector<double> coeffs;
  double flat_scale = 1.0;
  double delta0 = CutoffSpec{}.delta0;
  double tau0 = RegionConstants{}.tau0;
  double gamma0 = RegionConstants{}.gamma0;
  double gamma1 = RegionConstants{}.gamma1;
  std::optional<double> probe_B;

  CoefficientSpec coefficient() const;
  CutoffSpec cutoff() const { return CutoffSpec{delta0}; }
  RegionConstants regions() const { return RegionConstants{tau0, gamma0, gamma1}; }
};

/// Throws std::invalid_argument on malformed JSON, unknown keys or values
/// outside their domain.
ModelConfig parse_model_config(const std::string& json_text);
ModelConfig load_model_config(const std::string& path);
std::string model_config_to_json(const ModelConfig& cfg);

}  // namespace dochar
