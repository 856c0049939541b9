#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpe/dynamics.hpp"

namespace hpe {

inline constexpr const char* code_version = "0.1.0";
inline constexpr int schema_version = 1;

/// Flat run description; every key of the JSON document maps to one field.
struct RunConfig {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;
  std::vector<double> eps;  // empty: limit system only; several: sweep
  double dt = 1e-3;
  double horizon = 0.0;

  // initial data
  std::string family;        // heat | analytic-band | snapshot
  std::optional<double> amplitude;  // default: c0 * a (analytic-band), 1 (heat)
  int bands = 4;             // horizontal modes 1..bands
  int vertical_modes = 4;    // sine modes 1..vertical_modes
  std::optional<double> sigma;  // decay e^{-sigma k}; default a
  std::uint64_t seed = 1;
  std::string snapshot;      // directory holding u.csv / T.csv

  double a = 0.3;
  std::optional<double> lambda_override;
  std::optional<double> mu_override;
  std::optional<double> c0_override;
  double R = std::numbers::pi * std::numbers::pi / 2;

  std::string output_dir = "runs/default";
  double sample_every = 0.01;
  bool dealias = true;
  bool hydrostatic_split = true;
  int order = 1;
  double stiffness_safety = 1.0;
  double cfl_limit = 0.5;
  MeanGauge mean_gauge = MeanGauge::automatic;
  /// Weight of the limit solution inside the eta rate: "phi" or "eta".
  std::string eta_limit_weight = "phi";

  [[nodiscard]] StripGrid grid() const { return make_grid(nx, ny, lx); }
  [[nodiscard]] StepParams step_params() const;
  [[nodiscard]] bool sweep() const { return eps.size() > 1; }

  /// Throws config_error naming the offending key.
  void validate() const;
};

class config_error : public std::invalid_argument {
 public:
  config_error(const std::string& key, const std::string& msg)
      : std::invalid_argument(key + ": " + msg), key_(key) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Parse a flat JSON document (text). Unknown keys, missing required keys
/// (Nx, Ny, horizon, family) and constraint violations raise config_error.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Fully resolved document, defaults included.
std::string config_to_json(const RunConfig& c);

/// FNV-1a of the resolved document, as 16 hex digits.
std::string config_hash(const RunConfig& c);
std::uint64_t fnv1a(const std::string& bytes);

MeanGauge mean_gauge_from_string(const std::string& s);
std::string to_string(MeanGauge g);

}  // namespace hpe
