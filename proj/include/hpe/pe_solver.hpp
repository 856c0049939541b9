#pragma once

#include <optional>

#include "hpe/analytic_band.hpp"
#include "hpe/galerkin.hpp"

namespace hpe {

/// State of the scaled primitive system on the unit strip.
struct PEState {
  double t = 0.0;
  long steps = 0;
  double eps = 1.0;
  SpectralField u;  // sine
  SpectralField v;  // cosine, zero at both walls
  SpectralField T;  // sine
  Diagnostics diag;
  SchemeMemory memory;
  std::optional<BandState> tau;
  std::optional<galerkin::Operators> ops;
};

PEState make_pe_state(const SpectralField& u0, const SpectralField& T0, double eps,
                      const StepParams& params, std::optional<BandState> tau = {});

/// Fields on the thin strip 0 < y < eps, stored in the unit-strip variable
/// y/eps: U1 = u, U2 = eps v.
struct ThinStripFields {
  double eps = 1.0;
  SpectralField U1, U2, T, P;
};

ThinStripFields rescale_to_physical(const PEState& state, const SpectralField& p = {});
/// ||d_x U1 + d_y U2||_{L^2(S^eps)}.
double thin_divergence(const ThinStripFields& f);

/// Solves (d_x^2 + eps^-2 d_y^2) p = rhs with d_y p = bottom[k] at y = 0 and
/// top[k] at y = 1 (empty vectors mean homogeneous data). rhs is cosine or
/// collocation; the result is cosine with zero horizontal-and-vertical mean.
/// Throws std::domain_error when the k = 0 data are not compatible.
SpectralField anisotropic_pressure_solve(const SpectralField& rhs,
                                         const std::vector<cplx>& bottom,
                                         const std::vector<cplx>& top, double eps);

/// Pressure of the current state from the divergence of the momentum
/// equations, with wall data d_y p = eps^2 d_y^2 v.
SpectralField pe_pressure(const PEState& state, const StepParams& params);
/// ||d_y p - T||_{L^2}.
double hydrostatic_residual(const PEState& state, const SpectralField& p);

Tendency rhs_pe(const PEState& state, const StepParams& params);

/// One IMEX step followed by the projection onto the divergence-free, no-slip
/// subspace; tau (when tracked) is advanced with the pre-step state.
void step_pe(PEState& state, const StepParams& params, const DyadicFilterBank& bank);

}  // namespace hpe
