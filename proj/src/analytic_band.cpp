#include "hpe/analytic_band.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hpe {

std::vector<double> weight_multipliers(const StripGrid& grid, double radius) {
  std::vector<double> w(grid.modes_x());
  for (int k = 0; k < grid.modes_x(); ++k) w[k] = std::exp(radius * grid.wavenumber(k));
  return w;
}

SpectralField apply_weight(const SpectralField& f, double radius) {
  const StripGrid& g = f.grid();
  SpectralField out = f;
  if (radius == 0.0) return out;
  for (int k = 0; k < g.modes_x(); ++k) {
    const double e = radius * g.wavenumber(k);
    auto col = out.mode(k);
    if (e > weight_exponent_limit) {
      bool populated = false;
      for (auto c : col) populated = populated || c != cplx{};
      if (populated)
        throw std::overflow_error("apply_weight: radius * |xi| = " + std::to_string(e) +
                                  " exceeds 30 at mode k = " + std::to_string(k));
    }
    const double w = std::exp(e);
    for (auto& c : col) c *= w;
  }
  return out;
}

std::string_view to_string(BandKind k) {
  switch (k) {
    case BandKind::theta: return "theta";
    case BandKind::tau: return "tau";
    case BandKind::eta: return "eta";
  }
  return "?";
}

BandState::BandState(double a_, double lambda_, BandKind kind_) : a(a_), lambda(lambda_), kind(kind_) {
  if (!(a > 0.0)) throw std::invalid_argument("BandState: a must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("BandState: lambda must be positive");
  history.push_back({0.0, 0.0, 0.0, a});
}

BandState BandState::advanced(double integrand, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("BandState: dt must be positive");
  if (!(integrand >= 0.0)) throw std::invalid_argument("BandState: integrand must be nonnegative");
  BandState next = *this;
  next.t += dt;
  next.accumulated += dt * integrand;
  next.history.push_back({next.t, integrand, next.accumulated, next.radius()});
  if (next.radius() <= 0.0) next.exhausted = true;
  return next;
}

void BandState::write_csv(std::ostream& os) const {
  os << "t,integrand,accumulated,radius\n";
  os.precision(17);
  for (const auto& s : history)
    os << s.t << ',' << s.integrand << ',' << s.accumulated << ',' << s.radius << '\n';
}

double theta_rate(const SpectralField& u_phi, const DyadicFilterBank& bank) {
  return besov_norm(ddy(u_phi), 0.5, bank);
}

double tau_rate(const SpectralField& u_theta, const SpectralField& v_theta, double eps,
                const DyadicFilterBank& bank) {
  double r = besov_norm(ddy(u_theta), 0.5, bank);
  if (eps != 0.0) r += eps * besov_norm(ddy(v_theta), 0.5, bank);
  return r;
}

double eta_rate(const SpectralField& u_theta_pe, const SpectralField& u_phi_limit, double eps,
                const DyadicFilterBank& bank) {
  const SpectralField ux = eps * ddx(u_theta_pe);
  return besov_norm_pair(ddy(u_theta_pe), ux, 0.5, bank) + theta_rate(u_phi_limit, bank);
}

namespace {

void require_kind(const BandState& b, BandKind k) {
  if (b.kind != k)
    throw std::invalid_argument("band kind " + std::string(to_string(b.kind)) + " where " +
                                std::string(to_string(k)) + " is required");
}

}  // namespace

BandState advance_theta(const BandState& band, const SpectralField& u_phi, double dt,
                        const DyadicFilterBank& bank) {
  require_kind(band, BandKind::theta);
  return band.advanced(theta_rate(u_phi, bank), dt);
}

BandState advance_tau(const BandState& band, const SpectralField& u_theta,
                      const SpectralField& v_theta, double eps, double dt,
                      const DyadicFilterBank& bank) {
  require_kind(band, BandKind::tau);
  return band.advanced(tau_rate(u_theta, v_theta, eps, bank), dt);
}

BandState advance_eta(const BandState& band, const SpectralField& u_theta_pe,
                      const SpectralField& /*v_theta_pe*/, const SpectralField& u_phi_limit,
                      double eps, double dt, const DyadicFilterBank& bank) {
  require_kind(band, BandKind::eta);
  return band.advanced(eta_rate(u_theta_pe, u_phi_limit, eps, bank), dt);
}

OrderingReport check_weight_ordering(const BandState& theta, const BandState& tau,
                                     const BandState& eta) {
  const auto n = eta.history.size();
  if (theta.history.size() != n || tau.history.size() != n)
    throw std::invalid_argument("check_weight_ordering: histories differ in length");
  OrderingReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = eta.history[i].t;
    if (std::abs(theta.history[i].t - t) > 1e-12 || std::abs(tau.history[i].t - t) > 1e-12)
      throw std::invalid_argument("check_weight_ordering: histories are not synchronized");
    const double re = eta.history[i].radius;
    const double margin = std::min(theta.history[i].radius, tau.history[i].radius) - re;
    rep.worst_margin = std::min(rep.worst_margin, std::min(margin, re));
    if ((margin < 0.0 || re < 0.0) && rep.holds) {
      rep.holds = false;
      rep.first_violation_t = t;
    }
  }
  return rep;
}

}  // namespace hpe
