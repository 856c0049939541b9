#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "hpe/lp.hpp"

namespace hpe {

/// Largest admissible radius * |xi| before the exponential weight is refused.
inline constexpr double weight_exponent_limit = 30.0;

/// e^{radius |D_x|} applied mode-wise. Throws std::overflow_error naming the
/// first populated mode with radius * |xi| > 30.
SpectralField apply_weight(const SpectralField& f, double radius);

/// Per-mode multipliers e^{radius |xi_k|}.
std::vector<double> weight_multipliers(const StripGrid& grid, double radius);

enum class BandKind { theta, tau, eta };
std::string_view to_string(BandKind k);

struct BandSample {
  double t = 0.0;
  double integrand = 0.0;
  double accumulated = 0.0;
  double radius = 0.0;
};

/// Radius record r(t) = a - lambda * accumulated(t), accumulated(0) = 0.
struct BandState {
  double a = 0.3;
  double lambda = 1.0;
  double accumulated = 0.0;
  double t = 0.0;
  BandKind kind = BandKind::theta;
  bool exhausted = false;
  std::vector<BandSample> history;

  BandState() = default;
  BandState(double a_, double lambda_, BandKind kind_);

  [[nodiscard]] double radius() const { return a - lambda * accumulated; }
  /// Forward Euler step with the given integrand; flags exhaustion when the
  /// radius reaches 0.
  [[nodiscard]] BandState advanced(double integrand, double dt) const;

  /// Rows t,integrand,accumulated,radius.
  void write_csv(std::ostream& os) const;
};

/// theta' = ||d_y u_phi||_{B^1/2}
double theta_rate(const SpectralField& u_phi, const DyadicFilterBank& bank);
/// tau' = ||d_y u_Theta||_{B^1/2} + eps ||d_y v_Theta||_{B^1/2}
double tau_rate(const SpectralField& u_theta, const SpectralField& v_theta, double eps,
                const DyadicFilterBank& bank);
/// eta' = ||(d_y u_Theta, eps d_x u_Theta)||_{B^1/2} + ||d_y u_phi||_{B^1/2}
double eta_rate(const SpectralField& u_theta_pe, const SpectralField& u_phi_limit, double eps,
                const DyadicFilterBank& bank);

BandState advance_theta(const BandState& band, const SpectralField& u_phi, double dt,
                        const DyadicFilterBank& bank);
BandState advance_tau(const BandState& band, const SpectralField& u_theta,
                      const SpectralField& v_theta, double eps, double dt,
                      const DyadicFilterBank& bank);
BandState advance_eta(const BandState& band, const SpectralField& u_theta_pe,
                      const SpectralField& v_theta_pe, const SpectralField& u_phi_limit, double eps,
                      double dt, const DyadicFilterBank& bank);

/// Checks 0 <= (a - mu eta)|xi| <= min((a - lambda theta)|xi|, (a - lambda tau)|xi|)
/// at every common history instant. Histories must share their time stamps.
struct OrderingReport {
  bool holds = true;
  double worst_margin = 0.0;  // min over samples of min(r_theta, r_tau) - r_eta (>= 0 when holds)
  double first_violation_t = -1.0;
};
OrderingReport check_weight_ordering(const BandState& theta, const BandState& tau,
                                     const BandState& eta);

}  // namespace hpe
