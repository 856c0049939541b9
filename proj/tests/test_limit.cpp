#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hpe/limit_solver.hpp"
#include "test_support.hpp"

using namespace hpe;
using hpe::fixture::pi;

namespace {

double max_pointwise_diff(const SpectralField& f, const std::function<double(double, double)>& ref,
                          int ny_eval) {
  const auto vals = to_physical(f, ny_eval);
  const StripGrid& g = f.grid();
  double m = 0.0;
  for (int j = 0; j <= ny_eval; ++j)
    for (int i = 0; i < g.nx; ++i)
      m = std::max(m, std::abs(vals(j, i) - ref(i * g.lx / g.nx, double(j) / ny_eval)));
  return m;
}

SpectralField heat_profile(const StripGrid& g, double t) {
  SpectralField u(g, Parity::sine);
  u(0, 1) = std::exp(-pi * pi * t);
  return u;
}

StepParams heat_params(int order) {
  StepParams p;
  p.dt = 1e-4;
  p.order = order;
  return p;
}

}  // namespace

TEST(VFromU, XIndependentGivesZero) {
  const auto g = make_grid(16, 16);
  const auto u = fixture::sample(g, Parity::sine, [](double, double y) { return std::sin(3 * pi * y); });
  EXPECT_EQ(l2_norm(v_from_u(u)), 0.0);
}

TEST(VFromU, AntiderivativeOracle) {
  const auto g = make_grid(16, 16);
  for (int k = 1; k <= 3; ++k) {
    const auto u = fixture::sample(g, Parity::sine, [k](double x, double y) {
      return std::cos(k * x) * std::sin(2 * pi * y);
    });
    const auto v = v_from_u(u);
    EXPECT_LT(max_pointwise_diff(v, [k](double x, double y) {
      return k / (2 * pi) * std::sin(k * x) * (1 - std::cos(2 * pi * y));
    }, 64), 1e-13);
    EXPECT_LT(wall_flux(u), 1e-14);
  }
}

TEST(VFromU, IncompatibleDataRaiseWallFlux) {
  const auto g = make_grid(16, 16);
  const int k = 2;
  const auto u = fixture::sample(g, Parity::sine, [k](double x, double y) {
    return std::cos(k * x) * std::sin(pi * y);
  }, 4);
  EXPECT_NEAR(wall_flux(u), 2.0 * k / pi, 1e-12);
  EXPECT_THROW(make_limit_state(u, SpectralField(g, Parity::sine), StepParams{}), step_error);
}

TEST(PressureLimit, BuoyancyOracle) {
  const auto g = make_grid(16, 16);
  for (int k = 1; k <= 4; ++k) {
    const auto T = fixture::sample(g, Parity::sine, [k](double x, double y) {
      return std::sin(pi * y) * std::cos(k * x);
    });
    const auto px = pressure_gradient_limit(SpectralField(g, Parity::sine), T);
    EXPECT_LT(max_pointwise_diff(px, [k](double x, double y) {
      return k / pi * std::sin(k * x) * std::cos(pi * y);
    }, 32), 1e-13);
  }
}

TEST(PressureLimit, XIndependentAndZero) {
  const auto g = make_grid(16, 16);
  const auto u = fixture::sample(g, Parity::sine, [](double, double y) { return y * (1 - y); }, 4);
  SpectralField zero(g, Parity::sine);
  EXPECT_EQ(l2_norm(pressure_gradient_limit(u, zero)), 0.0);
  EXPECT_EQ(l2_norm(pressure_gradient_limit(zero, zero)), 0.0);
}

TEST(PressureLimit, WallShearAndMomentumFluxOracle) {
  // u = cos(x) sin(2 pi y): d_y u(1) - d_y u(0) = 0; int u^2 dy = cos^2 x / 2
  // so d_x int u^2 = -sin(2x)/2, and d_x p = sin(2x)/2.
  const auto g = make_grid(16, 16);
  const auto u = fixture::sample(g, Parity::sine, [](double x, double y) {
    return std::cos(x) * std::sin(2 * pi * y);
  });
  const auto px = pressure_gradient_limit(u, SpectralField(g, Parity::sine));
  EXPECT_LT(max_pointwise_diff(px, [](double x, double) { return 0.5 * std::sin(2 * x); }, 16),
            1e-13);
  // u = cos(x) sin(pi y): d_y u(1) - d_y u(0) = -2 pi cos x
  const auto u1 = fixture::sample(g, Parity::sine, [](double x, double y) {
    return std::cos(x) * std::sin(pi * y);
  });
  const auto px1 = pressure_gradient_limit(u1, SpectralField(g, Parity::sine));
  EXPECT_LT(max_pointwise_diff(px1, [](double x, double) {
    return -2 * pi * std::cos(x) + 0.5 * std::sin(2 * x);
  }, 16), 1e-12);
}

TEST(RhsLimit, ZeroStateGivesZero) {
  const auto g = make_grid(16, 16);
  SpectralField z(g, Parity::sine);
  const auto s = make_limit_state(z, z, StepParams{});
  const auto r = rhs_limit(s, StepParams{});
  EXPECT_EQ(l2_norm(r.du()), 0.0);
  EXPECT_EQ(l2_norm(r.dT()), 0.0);
}

TEST(RhsLimit, HeatReduction) {
  const auto g = make_grid(16, 32);
  const auto u = fixture::sample(g, Parity::sine, [](double, double y) {
    return std::sin(pi * y) + 0.3 * std::sin(4 * pi * y);
  });
  const auto s = make_limit_state(u, SpectralField(g, Parity::sine), StepParams{});
  const auto r = rhs_limit(s, StepParams{});
  EXPECT_LT(fixture::rel_diff(r.du(), ddy(ddy(u))), 1e-12);
  EXPECT_EQ(l2_norm(r.du_explicit), 0.0);
}

TEST(RhsLimit, ManufacturedResidual) {
  const auto g = make_grid(16, 32);
  fixture::Manufactured ms;
  StepParams p;
  p.forcing = ms.forcing();
  for (double t : {0.0, 0.3}) {
    auto s = make_limit_state(ms.u_field(g, t), ms.T_field(g, t), p);
    s.t = t;
    const auto r = rhs_limit(s, p);
    // d_t u* = -u*, d_t T* = -T*
    EXPECT_LT(l2_norm(r.du() + s.u), 1e-10);
    EXPECT_LT(l2_norm(r.dT() + s.T), 1e-10);
  }
}

TEST(StepLimit, HeatSemigroup) {
  const auto g = make_grid(8, 64);
  const auto bank = build_filter_bank(g);
  // first order: error O(dt); second order meets 1e-6
  for (int order : {1, 2}) {
    const auto p = heat_params(order);
    auto s = make_limit_state(heat_profile(g, 0.0), SpectralField(g, Parity::sine), p);
    for (int n = 0; n < 1000; ++n) step_limit(s, p, bank);
    EXPECT_NEAR(s.t, 0.1, 1e-12);
    const double err = l2_norm(s.u - heat_profile(g, 0.1));
    if (order == 2) EXPECT_LT(err, 1e-6);
    else EXPECT_LT(err, 5e-4);
  }
}

TEST(StepLimit, ZeroStaysZero) {
  const auto g = make_grid(16, 16);
  const auto bank = build_filter_bank(g);
  SpectralField z(g, Parity::sine);
  auto s = make_limit_state(z, z, StepParams{}, BandState(0.3, 1.0, BandKind::theta));
  for (int n = 0; n < 20; ++n) step_limit(s, StepParams{}, bank);
  EXPECT_EQ(l2_norm(s.u), 0.0);
  EXPECT_EQ(l2_norm(s.T), 0.0);
  EXPECT_EQ(s.theta->radius(), 0.3);
}

TEST(StepLimit, TemporalOrder) {
  const auto g = make_grid(8, 16);
  const auto bank = build_filter_bank(g);
  fixture::Manufactured ms;
  for (int order : {1, 2}) {
    std::vector<double> errs;
    for (double dt : {0.02, 0.01, 0.005}) {
      StepParams p;
      p.dt = dt;
      p.order = order;
      p.forcing = ms.forcing();
      auto s = make_limit_state(ms.u_field(g, 0), ms.T_field(g, 0), p);
      const int n = static_cast<int>(std::lround(0.4 / dt));
      for (int i = 0; i < n; ++i) step_limit(s, p, bank);
      errs.push_back(l2_norm(s.u - ms.u_field(g, s.t)) + l2_norm(s.T - ms.T_field(g, s.t)));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double slope = std::log2(errs[i - 1] / errs[i]);
      EXPECT_NEAR(slope, order, 0.15) << "order " << order;
    }
  }
}

TEST(StepLimit, ColumnMeanAndWallsPreserved) {
  const auto g = make_grid(32, 32);
  const auto bank = build_filter_bank(g);
  std::mt19937_64 rng(7);
  auto u = fixture::random_sine_field(g, rng, 0, 4, 6);
  auto T = fixture::random_sine_field(g, rng, 0, 4, 6);
  // project out the column means, including k = 0
  for (int k = 0; k <= 4; ++k) {
    cplx c{};
    double cc = 0.0;
    for (int m = 1; m < g.ny; m += 2) {
      c += u(k, m) * (2.0 / (m * pi));
      cc += 4.0 / (m * m * pi * pi);
    }
    for (int m = 1; m < g.ny; m += 2) u(k, m) -= c * (2.0 / (m * pi)) / cc;
  }
  u *= 0.05;
  T *= 0.05;
  StepParams p;
  p.dt = 2e-3;
  auto s = make_limit_state(u, T, p);
  EXPECT_EQ(s.memory.column_gauge, 1);
  for (int n = 0; n < 200; ++n) {
    step_limit(s, p, bank);
    ASSERT_LT(s.diag.column_mean, 1e-8) << "step " << n;
    ASSERT_LT(s.diag.divergence, 1e-10);
  }
  const auto vals = to_physical(s.u);
  for (int i = 0; i < g.nx; ++i) {
    EXPECT_EQ(vals(0, i), 0.0);
    EXPECT_LT(std::abs(vals(g.ny, i)), 1e-15);
  }
}

TEST(StepLimit, SmallDataWeightedNormDecays) {
  const auto g = make_grid(32, 32);
  const auto bank = build_filter_bank(g);
  std::mt19937_64 rng(11);
  auto u = fixture::random_sine_field(g, rng, 1, 4, 4);
  for (int k = 1; k <= 4; ++k) {
    // zero column mean: keep even m only
    for (int m = 1; m < g.ny; m += 2) u(k, m) = 0.0;
  }
  u *= 1e-3;
  auto T = 1e-3 * fixture::random_sine_field(g, rng, 1, 4, 4);
  StepParams p;
  p.dt = 1e-3;
  auto s = make_limit_state(u, T, p, BandState(0.3, 1.0, BandKind::theta));
  auto weighted = [&] {
    const double r = s.theta->radius();
    return std::exp(p.R * s.t) * besov_norm_pair(apply_weight(s.u, r), apply_weight(s.T, r), 0.5, bank, true);
  };
  double prev = weighted();
  for (int n = 0; n < 300; ++n) {
    step_limit(s, p, bank);
    const double w = weighted();
    EXPECT_LE(w, prev * (1 + 1e-12));
    prev = w;
  }
}

TEST(StepLimit, BandExhaustionIsReported) {
  const auto g = make_grid(16, 16);
  const auto bank = build_filter_bank(g);
  auto u = fixture::sample(g, Parity::sine, [](double x, double y) {
    return std::cos(x) * std::sin(2 * pi * y);
  });
  StepParams p;
  p.dt = 1e-3;
  auto s = make_limit_state(u, SpectralField(g, Parity::sine), p, BandState(0.01, 1e3, BandKind::theta));
  EXPECT_THROW(for (int n = 0; n < 100; ++n) step_limit(s, p, bank), band_exhausted);
  EXPECT_TRUE(s.theta->exhausted);
}

TEST(StepLimit, CflAndNanGuards) {
  const auto g = make_grid(16, 16);
  const auto bank = build_filter_bank(g);
  auto u = fixture::sample(g, Parity::sine, [](double x, double y) {
    return 100.0 * std::cos(x) * std::sin(2 * pi * y);
  });
  StepParams p;
  p.dt = 0.05;
  auto s = make_limit_state(u, SpectralField(g, Parity::sine), p);
  try {
    step_limit(s, p, bank);
    FAIL() << "expected CFL error";
  } catch (const step_error& e) {
    EXPECT_NE(std::string(e.what()).find("CFL"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("step 0"), std::string::npos);
  }
  auto s2 = make_limit_state(SpectralField(g, Parity::sine), SpectralField(g, Parity::sine), StepParams{});
  s2.T(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(step_limit(s2, StepParams{}, bank), step_error);
}

TEST(StepParams, Validation) {
  StepParams p;
  p.dt = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = StepParams{};
  p.R = pi * pi;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = StepParams{};
  p.order = 3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
