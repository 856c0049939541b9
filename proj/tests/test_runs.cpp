#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hpe/runs.hpp"
#include "test_support.hpp"

using namespace hpe;
using hpe::fixture::pi;

namespace {

RunSetup heat_setup(const StripGrid& g, double eps = 0.0) {
  RunSetup s;
  s.grid = g;
  s.params.dt = 1e-3;
  s.params.order = 2;
  s.eps = eps;
  s.horizon = 0.1;
  s.sample_every = 0.02;
  return s;
}

}  // namespace

TEST(Families, CompatibilityProjectionRemovesColumnMean) {
  const StripGrid g = make_grid(16, 16);
  std::mt19937_64 rng(3);
  const SpectralField u = fixture::random_sine_field(g, rng, 0, 5, 9);
  const SpectralField p = compatibility_projection(u);
  for (int k = 1; k < g.modes_x(); ++k) {
    cplx mean{};
    for (int m = 1; m < g.ny; m += 2) mean += p(k, m) * (2.0 / (m * pi));
    EXPECT_LT(std::abs(mean), 1e-14);
  }
  for (int m = 0; m <= g.ny; ++m) EXPECT_EQ(p(0, m), u(0, m));
  EXPECT_LT(l2_norm(compatibility_projection(p) - p), 1e-14);
  // orthogonal projection: the removed part is along the constraint only
  EXPECT_NEAR(l2_norm_sq(u), l2_norm_sq(p) + l2_norm_sq(u - p), 1e-12 * l2_norm_sq(u));
}

TEST(Families, AnalyticBandHasRequestedSize) {
  const StripGrid g = make_grid(32, 16);
  const DyadicFilterBank bank = build_filter_bank(g);
  const InitialData d = analytic_band_data(g, 4, 4, 0.3, 11, 0.3, 0.02, bank);
  EXPECT_NEAR(data_size(d.u0, d.T0, 0.3, bank), 0.02, 1e-15);
  EXPECT_LT(wall_flux(d.u0), 1e-15);
  for (int k = 5; k < g.modes_x(); ++k)
    for (int m = 0; m <= g.ny; ++m) EXPECT_EQ(d.u0(k, m), cplx{});
  const InitialData e = analytic_band_data(g, 4, 4, 0.3, 11, 0.3, 0.02, bank);
  EXPECT_EQ(d.u0.data(), e.u0.data());
  const InitialData f = analytic_band_data(g, 4, 4, 0.3, 12, 0.3, 0.02, bank);
  EXPECT_NE(d.u0.data(), f.u0.data());
}

TEST(Families, HeatData) {
  const StripGrid g = make_grid(8, 16);
  const InitialData d = heat_data(g, 2.0);
  EXPECT_NEAR(l2_norm(d.u0), 2.0 * std::sqrt(g.lx / 2), 1e-14);
  EXPECT_EQ(l2_norm(d.T0), 0.0);
}

TEST(Snapshots, CsvRoundTripIsExact) {
  const StripGrid g = make_grid(16, 8, 3.0);
  std::mt19937_64 rng(5);
  const SpectralField u = fixture::random_sine_field(g, rng, 0, 8, 8);
  std::stringstream ss;
  write_field_csv(ss, u, "u", 0.125, {"config_hash=abc"});
  const FieldSnapshot back = read_field_csv(ss);
  EXPECT_EQ(back.name, "u");
  EXPECT_EQ(back.t, 0.125);
  EXPECT_TRUE(back.field.grid() == g);
  EXPECT_EQ(back.field.parity(), Parity::sine);
  EXPECT_EQ(back.field.data(), u.data());
  std::stringstream bad("# Nx=16\n# Ny=8\n# Lx=1\n# parity=dirichlet-sine\nk,m,re,im\n1;2\n");
  EXPECT_THROW(read_field_csv(bad), std::runtime_error);
}

TEST(Runs, LimitHeatRunRecordsSamplesAndTendencies) {
  const StripGrid g = make_grid(8, 32);
  const DyadicFilterBank bank = build_filter_bank(g);
  const RunRecord r = run_limit(heat_setup(g), heat_data(g, 1.0), bank);
  EXPECT_EQ(r.status, "ok");
  EXPECT_EQ(r.steps, 100);
  ASSERT_EQ(r.samples.size(), 6u);
  EXPECT_NEAR(r.sample_interval(), 0.02, 1e-12);
  EXPECT_EQ(r.eta_part.size(), 100u);
  for (const auto& s : r.samples) {
    const double e = std::exp(-pi * pi * s.t);
    EXPECT_NEAR(s.u(0, 1).real(), e, 1e-5);  // dt = 1e-3, second order
    // d_t u = d_y^2 u for the heat reduction
    EXPECT_NEAR(s.du(0, 1).real(), -pi * pi * s.u(0, 1).real(), 1e-12);
    EXPECT_DOUBLE_EQ(s.radius, r.a);  // x-independent: the band does not move
  }
  EXPECT_LT(r.max_divergence, 1e-14);
}

TEST(Runs, PeRunMatchesLimitOnHeatData) {
  const StripGrid g = make_grid(8, 32);
  const DyadicFilterBank bank = build_filter_bank(g);
  const RunRecord a = run_limit(heat_setup(g), heat_data(g, 1.0), bank);
  const RunRecord b = run_pe(heat_setup(g, 0.1), heat_data(g, 1.0), bank);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    EXPECT_LT(l2_norm(a.samples[i].u - b.samples[i].u), 1e-12);
  EXPECT_EQ(b.kind, "pe");
  EXPECT_EQ(b.eps, 0.1);
}

TEST(Runs, BandExhaustionEndsTheRun) {
  const StripGrid g = make_grid(16, 16);
  const DyadicFilterBank bank = build_filter_bank(g);
  RunSetup s = heat_setup(g);
  s.lambda = 1e4;
  const InitialData d = analytic_band_data(g, 3, 3, 0.3, 1, 0.3, 0.5, bank);
  const RunRecord r = run_limit(s, d, bank);
  EXPECT_EQ(r.status, "band-exhausted");
  EXPECT_NE(r.message.find("theta"), std::string::npos);
  EXPECT_LT(r.steps, 100);
  EXPECT_LE(r.band.radius(), 0.0);
}

TEST(Runs, RerunsAreBitIdentical) {
  const StripGrid g = make_grid(16, 16);
  const DyadicFilterBank bank = build_filter_bank(g);
  RunSetup s = heat_setup(g, 0.5);
  s.horizon = 0.05;
  const InitialData d = analytic_band_data(g, 3, 4, 0.3, 9, 0.3, 0.05, bank);
  const RunRecord a = run_pe(s, d, bank), b = run_pe(s, d, bank);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].u.data(), b.samples[i].u.data());
    EXPECT_EQ(a.samples[i].T.data(), b.samples[i].T.data());
  }
  EXPECT_EQ(a.eta_part, b.eta_part);
}
