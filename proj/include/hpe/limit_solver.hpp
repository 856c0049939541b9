#pragma once

#include <optional>

#include "hpe/analytic_band.hpp"
#include "hpe/galerkin.hpp"

namespace hpe {

/// State of the hydrostatic limit system. v and d_x p are derived from u, T.
struct LimitState {
  double t = 0.0;
  long steps = 0;
  SpectralField u;   // sine
  SpectralField T;   // sine
  SpectralField v;   // cosine, v(0) = 0
  SpectralField px;  // cosine
  Diagnostics diag;
  SchemeMemory memory;
  std::optional<BandState> theta;
  std::optional<galerkin::Operators> ops;
};

/// Builds a state from sine data. Rejects data violating the column-mean
/// compatibility on k != 0 and resolves the k = 0 gauge.
LimitState make_limit_state(const SpectralField& u0, const SpectralField& T0,
                            const StepParams& params, std::optional<BandState> theta = {});

/// d_x p of the limit system: i k [int_0^y T - int_0^1 int_0^y T] plus the
/// y-constant part d_y u(1) - d_y u(0) - d_x int_0^1 u^2 dy per mode k != 0.
/// The k = 0 mode is 0.
SpectralField pressure_gradient_limit(const SpectralField& u, const SpectralField& T);

Tendency rhs_limit(const LimitState& state, const StepParams& params);

/// One IMEX step. theta (when tracked) is advanced with the pre-step state;
/// throws band_exhausted once its radius reaches 0.
void step_limit(LimitState& state, const StepParams& params, const DyadicFilterBank& bank);

}  // namespace hpe
