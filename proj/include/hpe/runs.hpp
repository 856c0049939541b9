#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hpe/analytic_band.hpp"
#include "hpe/dynamics.hpp"

namespace hpe {

struct InitialData {
  SpectralField u0;  // sine, compatible
  SpectralField T0;  // sine
};

/// u0 = amplitude sin(pi y), T0 = 0.
InitialData heat_data(const StripGrid& grid, double amplitude);

/// Random phases with |coefficient| ~ e^{-sigma k} on horizontal modes
/// 1..bands and sine modes 1..vertical_modes, u0 projected onto int_0^1 u dy = 0.
/// Both fields are scaled so that ||e^{a|D|}u0||_{B^1/2} + ||e^{a|D|}T0||_{B^1/2}
/// equals `size`.
InitialData analytic_band_data(const StripGrid& grid, int bands, int vertical_modes, double sigma,
                               std::uint64_t seed, double a, double size,
                               const DyadicFilterBank& bank);

/// Removes from every k != 0 column the component along int_0^1 sin(m pi y) dy.
SpectralField compatibility_projection(const SpectralField& u);

/// ||e^{a|D|}u||_{B^1/2} + ||e^{a|D|}T||_{B^1/2}, mean mode included.
double data_size(const SpectralField& u, const SpectralField& T, double a,
                 const DyadicFilterBank& bank);

// --- field snapshots ------------------------------------------------------------

/// "# key=value" header lines followed by rows k,m,re,im.
void write_field_csv(std::ostream& os, const SpectralField& f, const std::string& name, double t,
                     const std::vector<std::string>& header = {});

struct FieldSnapshot {
  std::string name;
  double t = 0.0;
  SpectralField field;
};
FieldSnapshot read_field_csv(std::istream& is);
FieldSnapshot read_field_csv(const std::string& path);

// --- runs ---------------------------------------------------------------------

struct RunSetup {
  StripGrid grid;
  StepParams params;
  double eps = 0.0;  // 0: limit system
  double horizon = 0.0;
  double sample_every = 0.01;
  double a = 0.3;
  double lambda = 1.0;
  bool track_band = true;
};

struct Sample {
  double t = 0.0;
  double radius = 0.0;  // band radius at t (a without a band)
  SpectralField u, v, T;
  SpectralField du, dT;  // semi-discrete tendencies
};

struct RunRecord {
  std::string kind;  // limit | pe
  double eps = 0.0;
  StripGrid grid;
  double dt = 0.0;
  double R = 0.0;
  double a = 0.0;
  double lambda = 0.0;
  double horizon = 0.0;
  std::string status = "ok";  // ok | band-exhausted
  std::string message;
  long steps = 0;
  SpectralField u0, v0, T0;
  std::vector<Sample> samples;
  BandState band;  // theta (limit) or tau (pe)
  /// Per step, pre-step state: ||(d_y u_Theta, eps d_x u_Theta)||_{B^1/2} for
  /// pe runs, ||d_y u_phi||_{B^1/2} for limit runs.
  std::vector<double> eta_part;
  double max_divergence = 0.0;
  double max_column_mean = 0.0;
  double max_wall_flux = 0.0;

  [[nodiscard]] double sample_interval() const;
};

/// Runs until `horizon`; a band_exhausted error ends the run with status
/// "band-exhausted", other step errors propagate.
RunRecord run_limit(const RunSetup& setup, const InitialData& data, const DyadicFilterBank& bank);
RunRecord run_pe(const RunSetup& setup, const InitialData& data, const DyadicFilterBank& bank);

/// Sample stride in steps for a given cadence.
long sample_stride(double dt, double sample_every);

}  // namespace hpe
