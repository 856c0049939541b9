#pragma once

#include <vector>

#include "hpe/dynamics.hpp"

/// Divergence-free Galerkin discretization shared by the limit (eps = 0) and
/// the scaled primitive system (eps > 0).
///
/// Per horizontal mode k the velocity is u = sum_m a_m sin(m pi y) and
/// v = -i kappa sum_m a_m g_m (1 - cos(m pi y)), g_m = 1/(m pi). v vanishes at
/// y = 1 iff C.a = 0 with C_m = int_0^1 sin(m pi y) dy. Testing the momentum
/// equations with (sin(m pi y), v-profile) gives mass and stiffness matrices
/// of the form diagonal + rank one; the pressure only survives along C and is
/// handled as a Lagrange multiplier.
namespace hpe::galerkin {

class Operators {
 public:
  Operators(const StripGrid& grid, double eps);

  [[nodiscard]] const StripGrid& grid() const { return grid_; }
  [[nodiscard]] double eps() const { return eps_; }
  [[nodiscard]] double g(int m) const { return g_[m]; }
  [[nodiscard]] double constraint(int m) const { return c_[m]; }
  /// int_0^1 sin(m pi y) cos(n pi y) dy for 0 <= m, n <= 2 Ny.
  [[nodiscard]] double overlap(int m, int n) const {
    return s_[static_cast<std::size_t>(m) * (2 * grid_.ny + 1) + n];
  }

  /// out = M a, out = K a for one horizontal mode (slots 1..Ny-1).
  void apply_mass(int k, std::span<const cplx> a, std::span<cplx> out) const;
  void apply_stiffness(int k, std::span<const cplx> a, std::span<cplx> out) const;

  /// Overwrite r with a solving (M + alpha K) a = r + nu C and, when
  /// `constrained`, C.a = 0.
  void solve(int k, double alpha, std::span<cplx> r, bool constrained) const;

  /// Diffusion eigenvalue of the temperature mode (k, m).
  [[nodiscard]] double heat_rate(int k, int m) const;

 private:
  StripGrid grid_;
  double eps_;
  std::vector<double> g_, g2_, c_, s_;
};

/// Explicit loads b (sine indexed) for u and T at time t, forcing included.
struct Loads {
  SpectralField bu;
  SpectralField bt;
  double max_u = 0.0;
  double max_t = 0.0;
};

Loads explicit_loads(const Operators& ops, const SpectralField& u, const SpectralField& T,
                     double t, const StepParams& params);

/// Buoyancy part of the u load alone (split or unsplit route).
SpectralField buoyancy_load(const Operators& ops, const SpectralField& T, bool split);

/// True when mode k carries the column constraint under the resolved gauge.
inline bool constrained(int k, bool column_gauge) { return k != 0 || column_gauge; }

/// Resolve MeanGauge::automatic from the initial velocity.
bool resolve_column_gauge(MeanGauge gauge, const SpectralField& u0);

/// Throws step_error when some k != 0 column mean of u is not zero.
void require_compatible(const SpectralField& u, double tol = 1e-10);

/// One IMEX step of (u, T) in place.
void advance(const Operators& ops, SpectralField& u, SpectralField& T, double t,
             const StepParams& params, SchemeMemory& memory, int step_index);

Tendency tendency(const Operators& ops, const SpectralField& u, const SpectralField& T, double t,
                  const StepParams& params, bool column_gauge);

Diagnostics diagnose(const SpectralField& u, const SpectralField& v, double eps);

/// Gauss-Legendre nodes and weights on (0, 1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hpe::galerkin
