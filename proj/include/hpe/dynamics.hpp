#pragma once

#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hpe/field.hpp"

namespace hpe {

/// Body forces f(t, x, y) added to the u, v and T equations. The v forcing
/// enters the v equation as eps^2 * f_v, like the other v terms.
struct Forcing {
  using Fn = std::function<double(double, double, double)>;
  Fn u, v, T;
  [[nodiscard]] bool active() const { return u || v || T; }
};

/// Horizontal-mean (k = 0) treatment of the pressure gradient.
///   zero:      d_x p has no k = 0 part; the column mean of u is free.
///   column:    the k = 0 pressure gradient keeps int_0^1 u dy = 0.
///   automatic: column when the initial k = 0 column mean vanishes, else zero.
enum class MeanGauge { automatic, zero, column };

struct StepParams {
  double dt = 1e-3;
  bool dealias = true;
  double R = std::numbers::pi * std::numbers::pi / 2;
  /// 1: IMEX Euler, 2: Crank-Nicolson / Adams-Bashforth 2.
  int order = 1;
  bool hydrostatic_split = true;
  /// dt <= eps^2 * stiffness_safety / max|T| when the split is off.
  double stiffness_safety = 1.0;
  double cfl_limit = 0.5;
  MeanGauge mean_gauge = MeanGauge::automatic;
  Forcing forcing;

  void validate() const;
};

/// Explicit-load history carried between steps.
struct SchemeMemory {
  bool has_previous = false;
  SpectralField bu_prev;
  SpectralField bt_prev;
  /// Resolved gauge: -1 unresolved, 0 zero, 1 column.
  int column_gauge = -1;
};

struct Diagnostics {
  double divergence = 0.0;   // ||d_x u + d_y v||_{L^2}
  double wall_flux = 0.0;    // sup_x |v(x, 1)|
  double column_mean = 0.0;  // sup_x |int_0^1 u dy| / ||u||_{L^2} (0 for u = 0)
  double energy = 0.0;       // 1/2 ||(u, eps v)||^2
  double max_u = 0.0;
};

/// Semi-discrete tendencies of the Galerkin system (sine coefficients for u, T).
struct Tendency {
  SpectralField du_explicit;
  SpectralField du_diffusion;
  SpectralField dT_explicit;
  SpectralField dT_diffusion;
  SpectralField dv;  // cosine, total dv/dt

  [[nodiscard]] SpectralField du() const { return du_explicit + du_diffusion; }
  [[nodiscard]] SpectralField dT() const { return dT_explicit + dT_diffusion; }
};

class step_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class band_exhausted : public step_error {
 public:
  using step_error::step_error;
};

/// v = -int_0^y d_x u ds as an exact cosine series (v(0) = 0).
SpectralField v_from_u(const SpectralField& u);
/// sup_x |v(x, 1)| = sup_x |d_x int_0^1 u dy|.
double wall_flux(const SpectralField& u);

}  // namespace hpe
