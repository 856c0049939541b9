#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hpe/limit_solver.hpp"
#include "hpe/pe_solver.hpp"
#include "quadrature.hpp"
#include "test_support.hpp"

using namespace hpe;
using hpe::fixture::pi;

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

using hpe::fixture::golub_welsch;

/// Dense reference for the eps-scaled Boussinesq system: velocity
/// (sin(m pi y), -i kappa (1 - cos(m pi y))/(m pi)) per mode, every inner
/// product by quadrature, no-flux at y = 1 imposed through a KKT system, IMEX
/// Euler in time. Shares no code with the solver beyond the field container.
class DenseReference {
 public:
  DenseReference(const StripGrid& g, double eps, double dt) : g_(g), eps_(eps), dt_(dt) {
    golub_welsch(96, yq_, wq_);
    kmax_ = g.dealias_cutoff();
  }

  void step(SpectralField& u, SpectralField& T) const {
    const int n = g_.ny - 1;
    const int nq = static_cast<int>(yq_.size());
    // profiles of every mode at the quadrature nodes
    std::vector<std::vector<cplx>> U(kmax_ + 1), Uy(kmax_ + 1), V(kmax_ + 1), Vy(kmax_ + 1),
        Th(kmax_ + 1), Thy(kmax_ + 1);
    for (int k = 0; k <= kmax_; ++k) {
      const double kap = g_.wavenumber(k);
      for (auto* p : {&U[k], &Uy[k], &V[k], &Vy[k], &Th[k], &Thy[k]}) p->assign(nq, 0.0);
      for (int q = 0; q < nq; ++q)
        for (int m = 1; m <= n; ++m) {
          const double y = yq_[q], s = std::sin(m * pi * y), c = std::cos(m * pi * y);
          U[k][q] += u(k, m) * s;
          Uy[k][q] += u(k, m) * (m * pi * c);
          V[k][q] += u(k, m) * cplx{0, -kap} * (1 - c) / (m * pi);
          Vy[k][q] += u(k, m) * cplx{0, -kap} * s;
          Th[k][q] += T(k, m) * s;
          Thy[k][q] += T(k, m) * (m * pi * c);
        }
    }
    const int nxq = 4 * g_.nx;
    auto to_x = [&](const std::vector<std::vector<cplx>>& f, int q, bool dx, std::vector<double>& out) {
      out.assign(nxq, 0.0);
      for (int i = 0; i < nxq; ++i) {
        const double x = i * g_.lx / nxq;
        for (int k = 0; k <= kmax_; ++k) {
          cplx c = f[k][q];
          if (dx) c *= cplx{0, g_.wavenumber(k)};
          const cplx e = c * std::exp(cplx{0, g_.wavenumber(k) * x});
          out[i] += k == 0 ? e.real() : 2 * e.real();
        }
      }
    };
    auto to_k = [&](const std::vector<double>& f, int k) {
      cplx acc{};
      for (int i = 0; i < nxq; ++i) acc += f[i] * std::exp(cplx{0, -g_.wavenumber(k) * i * g_.lx / nxq});
      return acc / double(nxq);
    };
    std::vector<std::vector<cplx>> Nu(kmax_ + 1, std::vector<cplx>(nq)), Nv = Nu, Nt = Nu;
    std::vector<double> pu, pux, puy, pv, pvx, pvy, ptx, pty;
    for (int q = 0; q < nq; ++q) {
      to_x(U, q, false, pu);
      to_x(U, q, true, pux);
      to_x(Uy, q, false, puy);
      to_x(V, q, false, pv);
      to_x(V, q, true, pvx);
      to_x(Vy, q, false, pvy);
      to_x(Th, q, true, ptx);
      to_x(Thy, q, false, pty);
      std::vector<double> a(nxq), b(nxq), c(nxq);
      for (int i = 0; i < nxq; ++i) {
        a[i] = pu[i] * pux[i] + pv[i] * puy[i];
        b[i] = pu[i] * pvx[i] + pv[i] * pvy[i];
        c[i] = pu[i] * ptx[i] + pv[i] * pty[i];
      }
      for (int k = 0; k <= kmax_; ++k) {
        Nu[k][q] = to_k(a, k);
        Nv[k][q] = to_k(b, k);
        Nt[k][q] = to_k(c, k);
      }
    }
    const double e2 = eps_ * eps_;
    for (int k = 0; k <= kmax_; ++k) {
      const double kap = g_.wavenumber(k);
      CMat M = CMat::Zero(n, n), K = CMat::Zero(n, n), Mt = CMat::Zero(n, n), Kt = CMat::Zero(n, n);
      CVec b = CVec::Zero(n), bt = CVec::Zero(n), C = CVec::Zero(n);
      for (int q = 0; q < nq; ++q) {
        const double y = yq_[q], w = wq_[q];
        std::vector<double> s(n + 1), ds(n + 1);
        std::vector<cplx> ps(n + 1), dps(n + 1);
        for (int m = 1; m <= n; ++m) {
          s[m] = std::sin(m * pi * y);
          ds[m] = m * pi * std::cos(m * pi * y);
          ps[m] = cplx{0, -kap} * (1 - std::cos(m * pi * y)) / (m * pi);
          dps[m] = cplx{0, -kap} * s[m];
        }
        for (int i = 1; i <= n; ++i) {
          for (int j = 1; j <= n; ++j) {
            M(i - 1, j - 1) += w * (s[i] * s[j] + e2 * std::conj(ps[i]) * ps[j]);
            K(i - 1, j - 1) += w * (ds[i] * ds[j] + e2 * kap * kap * s[i] * s[j] +
                                    e2 * (std::conj(dps[i]) * dps[j] +
                                          e2 * kap * kap * std::conj(ps[i]) * ps[j]));
            Mt(i - 1, j - 1) += w * s[i] * s[j];
            Kt(i - 1, j - 1) += w * (ds[i] * ds[j] + kap * kap * s[i] * s[j]);
          }
          b(i - 1) += w * (-Nu[k][q] * s[i] + std::conj(ps[i]) * (Th[k][q] - e2 * Nv[k][q]));
          bt(i - 1) += w * (-Nt[k][q] * s[i]);
          C(i - 1) += w * s[i];
        }
      }
      CVec a(n), t(n);
      for (int m = 1; m <= n; ++m) {
        a(m - 1) = u(k, m);
        t(m - 1) = T(k, m);
      }
      CMat kkt = CMat::Zero(n + 1, n + 1);
      kkt.topLeftCorner(n, n) = M + dt_ * K;
      kkt.block(0, n, n, 1) = C;
      kkt.block(n, 0, 1, n) = C.transpose();
      CVec rhs(n + 1);
      rhs.head(n) = M * a + dt_ * b;
      rhs(n) = 0.0;
      const CVec sol = kkt.fullPivLu().solve(rhs);
      const CVec tn = (Mt + dt_ * Kt).fullPivLu().solve(Mt * t + dt_ * bt);
      for (int m = 1; m <= n; ++m) {
        u(k, m) = sol(m - 1);
        T(k, m) = tn(m - 1);
      }
    }
  }

 private:
  StripGrid g_;
  double eps_, dt_;
  int kmax_ = 0;
  std::vector<double> yq_, wq_;
};

SpectralField compatible_random(const StripGrid& g, std::mt19937_64& rng, int kmax, int mmax,
                                double amp) {
  auto u = fixture::random_sine_field(g, rng, 0, kmax, mmax);
  for (int k = 0; k <= kmax; ++k) {
    cplx c{};
    double cc = 0.0;
    for (int m = 1; m < g.ny; m += 2) {
      c += u(k, m) * (2.0 / (m * pi));
      cc += 4.0 / (m * m * pi * pi);
    }
    for (int m = 1; m < g.ny; m += 2) u(k, m) -= c * (2.0 / (m * pi)) / cc;
  }
  return amp * u;
}

/// Chebyshev collocation solve of eps^-2 p'' - kap^2 p = r on (0,1) with
/// p'(0) = g0, p'(1) = g1, evaluated at the points `ys`. Extended precision
/// keeps the ill-conditioned collocation matrix below the comparison tolerance.
std::vector<cplx> chebyshev_neumann(const std::function<cplx(double)>& r, double kap, double eps,
                                    cplx g0, cplx g1, const std::vector<double>& ys) {
  using LD = long double;
  using LC = std::complex<LD>;
  using LMat = Eigen::Matrix<LC, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<LC, Eigen::Dynamic, 1>;
  const int N = 48;
  const LD lpi = std::acos(LD(-1));
  std::vector<LD> x(N + 1);
  for (int j = 0; j <= N; ++j) x[j] = std::cos(lpi * j / N);
  auto cw = [&](int j) { return LD(j == 0 || j == N ? 2 : 1) * ((j % 2) ? -1 : 1); };
  // map s in [-1,1] to y = (1 - s)/2: d/dy = -2 d/ds
  LMat Dy = LMat::Zero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    LD diag = 0;
    for (int j = 0; j <= N; ++j)
      if (i != j) {
        const LD d = cw(i) / cw(j) / (x[i] - x[j]);
        Dy(i, j) = -2 * d;
        diag += d;
      }
    Dy(i, i) = 2 * diag;
  }
  LMat A = Dy * Dy / LD(eps * eps);
  for (int i = 0; i <= N; ++i) A(i, i) -= LD(kap * kap);
  LVec b(N + 1);
  for (int j = 0; j <= N; ++j) b(j) = LC(r(double((1 - x[j]) / 2)));
  // row 0 is y = 0, row N is y = 1
  A.row(0) = Dy.row(0);
  b(0) = LC(g0);
  A.row(N) = Dy.row(N);
  b(N) = LC(g1);
  LVec p;
  if (kap == 0.0) {
    // pure Neumann: border with a multiplier column and pin p(0) = 0
    LMat B = LMat::Zero(N + 2, N + 2);
    B.topLeftCorner(N + 1, N + 1) = A;
    B.block(1, N + 1, N - 1, 1).setOnes();
    B(N + 1, 0) = 1;
    LVec bb = LVec::Zero(N + 2);
    bb.head(N + 1) = b;
    p = B.fullPivLu().solve(bb).head(N + 1);
  } else {
    p = A.fullPivLu().solve(b);
  }
  std::vector<cplx> out;
  for (double y : ys) {
    // barycentric interpolation at s = 1 - 2y
    const LD s = 1 - 2 * LD(y);
    LC num{};
    LD den = 0;
    bool hit = false;
    for (int j = 0; j <= N; ++j) {
      if (std::abs(s - x[j]) < 1e-18L) {
        out.push_back(cplx(p(j)));
        hit = true;
        break;
      }
      const LD wj = LD(j == 0 || j == N ? 0.5 : 1.0) * ((j % 2) ? -1 : 1) / (s - x[j]);
      num += wj * p(j);
      den += wj;
    }
    if (!hit) out.push_back(cplx(num / den));
  }
  return out;
}

SpectralField heat_u(const StripGrid& g) {
  SpectralField u(g, Parity::sine);
  u(0, 1) = 1.0;
  return u;
}

}  // namespace

TEST(Rescale, IdentityAtUnitEpsAndZeroV) {
  const auto g = make_grid(16, 16);
  std::mt19937_64 rng(3);
  const auto u = compatible_random(g, rng, 3, 5, 0.1);
  const auto s = make_pe_state(u, SpectralField(g, Parity::sine), 1.0, StepParams{});
  const auto f = rescale_to_physical(s);
  EXPECT_EQ(l2_norm(f.U1 - s.u), 0.0);
  EXPECT_EQ(l2_norm(f.U2 - s.v), 0.0);
  const auto h = make_pe_state(heat_u(g), SpectralField(g, Parity::sine), 0.1, StepParams{});
  EXPECT_EQ(l2_norm(rescale_to_physical(h).U2), 0.0);
}

TEST(Rescale, ThinStripDivergenceVanishes) {
  const auto g = make_grid(16, 16);
  std::mt19937_64 rng(4);
  const auto u = compatible_random(g, rng, 3, 5, 0.1);
  for (double eps : {1.0, 0.3, 0.05}) {
    const auto s = make_pe_state(u, SpectralField(g, Parity::sine), eps, StepParams{});
    const auto f = rescale_to_physical(s);
    EXPECT_LT(thin_divergence(f), 1e-14);
    // chain rule: the thin-strip divergence is sqrt(eps) times the unit-strip one
    auto bad = f;
    bad.U2 *= 1.5;
    EXPECT_NEAR(thin_divergence(bad), std::sqrt(eps) * l2_norm(ddx(f.U1) + 1.5 * ddy(s.v)), 1e-12);
  }
}

TEST(PressureSolve, HomogeneousGivesZero) {
  const auto g = make_grid(16, 16);
  const auto p = anisotropic_pressure_solve(SpectralField(g, Parity::cosine), {}, {}, 0.3);
  EXPECT_EQ(l2_norm(p), 0.0);
}

TEST(PressureSolve, ManufacturedMode) {
  const auto g = make_grid(16, 16);
  for (double eps : {1.0, 0.2, 0.05})
    for (int k = 1; k <= 3; ++k) {
      const auto ps = fixture::sample(g, Parity::cosine, [k](double x, double y) {
        return std::cos(k * x) * std::cos(pi * y);
      });
      const auto rhs = -(k * k + pi * pi / (eps * eps)) * ps;
      EXPECT_LT(l2_norm(anisotropic_pressure_solve(rhs, {}, {}, eps) - ps), 1e-8);
    }
}

TEST(PressureSolve, ChebyshevOracleWithNeumannData) {
  const auto g = make_grid(16, 32);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (double eps : {1.0, 0.25}) {
    SpectralField r(g, Parity::cosine);
    std::vector<cplx> bottom(g.modes_x()), top(g.modes_x());
    for (int k = 1; k <= 3; ++k) {
      for (int m = 0; m <= 8; ++m) r(k, m) = {nd(rng), nd(rng)};
      bottom[k] = {nd(rng), nd(rng)};
      top[k] = {nd(rng), nd(rng)};
    }
    // k = 0 with compatible data: eps^-2 (g1 - g0) = mean of r
    for (int m = 1; m <= 8; ++m) r(0, m) = nd(rng);
    bottom[0] = 0.4;
    top[0] = 0.9;
    r(0, 0) = (0.9 - 0.4) / (eps * eps);
    const auto p = anisotropic_pressure_solve(r, bottom, top, eps);
    std::vector<double> ys;
    for (int j = 0; j <= g.ny; ++j) ys.push_back(double(j) / g.ny);
    for (int k = 0; k <= 3; ++k) {
      auto rk = [&](double y) {
        cplx acc{};
        for (int m = 0; m <= g.ny; ++m) acc += r(k, m) * std::cos(m * pi * y);
        return acc;
      };
      auto ref = chebyshev_neumann(rk, g.wavenumber(k), eps, bottom[k], top[k], ys);
      const auto got = mode_nodes(p, k, g.ny);
      if (k == 0) {
        // fix the free constant of the reference by the zero-mean gauge
        cplx mean{};
        for (int j = 0; j <= g.ny; ++j) mean += ((j == 0 || j == g.ny) ? 0.5 : 1.0) * (ref[j] - got[j]);
        mean /= double(g.ny);
        for (auto& v : ref) v -= mean;
      }
      for (int j = 0; j <= g.ny; ++j) EXPECT_LT(std::abs(got[j] - ref[j]), 1e-10) << "k=" << k << " eps=" << eps << " j=" << j;
    }
  }
}

TEST(PressureSolve, IncompatibleDataReportDefect) {
  const auto g = make_grid(16, 16);
  SpectralField r(g, Parity::cosine);
  r(0, 0) = 1.0;
  try {
    anisotropic_pressure_solve(r, {}, {}, 0.5);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("defect 1"), std::string::npos);
  }
}

TEST(RhsPe, ZeroStateAndHeatReduction) {
  const auto g = make_grid(16, 32);
  SpectralField z(g, Parity::sine);
  auto r0 = rhs_pe(make_pe_state(z, z, 0.3, StepParams{}), StepParams{});
  EXPECT_EQ(l2_norm(r0.du()), 0.0);
  EXPECT_EQ(l2_norm(r0.dv), 0.0);
  const auto u = fixture::sample(g, Parity::sine, [](double, double y) {
    return std::sin(pi * y) - 0.2 * std::sin(3 * pi * y);
  });
  for (double eps : {1.0, 0.1}) {
    auto r = rhs_pe(make_pe_state(u, z, eps, StepParams{}), StepParams{});
    EXPECT_LT(fixture::rel_diff(r.du(), ddy(ddy(u))), 1e-12);
    EXPECT_EQ(l2_norm(r.dv), 0.0);
  }
}

TEST(RhsPe, HydrostaticBalanceIsSteady) {
  const auto g = make_grid(16, 16);
  const auto T = fixture::sample(g, Parity::sine, [](double, double y) { return std::sin(2 * pi * y); });
  for (bool split : {true, false}) {
    StepParams p;
    p.hydrostatic_split = split;
    const auto r = rhs_pe(make_pe_state(SpectralField(g, Parity::sine), T, 0.2, p), p);
    EXPECT_EQ(l2_norm(r.dv), 0.0);
    EXPECT_EQ(l2_norm(r.du()), 0.0);
  }
}

TEST(RhsPe, ManufacturedResidual) {
  const auto g = make_grid(16, 32);
  for (double eps : {1.0, 0.3}) {
    fixture::Manufactured ms{eps};
    StepParams p;
    p.forcing = ms.forcing();
    auto s = make_pe_state(ms.u_field(g, 0.2), ms.T_field(g, 0.2), eps, p);
    s.t = 0.2;
    const auto r = rhs_pe(s, p);
    EXPECT_LT(l2_norm(r.du() + s.u), 1e-10);
    EXPECT_LT(l2_norm(r.dT() + s.T), 1e-10);
    EXPECT_LT(l2_norm(r.dv + s.v), 1e-10);
  }
}

TEST(RhsPe, SplitAndUnsplitRoutesAgree) {
  const auto g = make_grid(32, 32);
  std::mt19937_64 rng(9);
  const auto u = compatible_random(g, rng, 4, 6, 0.2);
  const auto T = 0.3 * fixture::random_sine_field(g, rng, 0, 4, 6);
  for (double eps : {1.0, 0.2}) {
    StepParams a, b;
    b.hydrostatic_split = false;
    const auto ra = rhs_pe(make_pe_state(u, T, eps, a), a);
    const auto rb = rhs_pe(make_pe_state(u, T, eps, b), b);
    EXPECT_LT(fixture::rel_diff(ra.du(), rb.du()), 1e-12);
    // the raw loads differ
    galerkin::Operators ops(g, eps);
    EXPECT_GT(l2_norm(galerkin::buoyancy_load(ops, T, true) - galerkin::buoyancy_load(ops, T, false)), 1e-3);
  }
}

TEST(StepPe, HeatReductionMatchesLimit) {
  const auto g = make_grid(8, 64);
  const auto bank = build_filter_bank(g);
  StepParams p;
  p.dt = 1e-4;
  p.order = 2;
  auto lim = make_limit_state(heat_u(g), SpectralField(g, Parity::sine), p);
  auto a = make_pe_state(heat_u(g), SpectralField(g, Parity::sine), 1.0, p);
  auto b = make_pe_state(heat_u(g), SpectralField(g, Parity::sine), 0.1, p);
  for (int n = 0; n < 1000; ++n) {
    step_limit(lim, p, bank);
    step_pe(a, p, bank);
    step_pe(b, p, bank);
  }
  SpectralField exact(g, Parity::sine);
  exact(0, 1) = std::exp(-pi * pi * 0.1);
  EXPECT_LT(l2_norm(a.u - exact), 1e-6);
  EXPECT_LT(l2_norm(a.u - lim.u), 1e-8);
  EXPECT_LT(l2_norm(b.u - lim.u), 1e-8);
}

TEST(StepPe, DivergenceFreeAndEnergyDecay) {
  const auto g = make_grid(32, 32);
  const auto bank = build_filter_bank(g);
  std::mt19937_64 rng(12);
  const auto u = compatible_random(g, rng, 4, 6, 0.1);
  StepParams p;
  p.dt = 2e-3;
  for (double eps : {1.0, 0.1}) {
    auto s = make_pe_state(u, SpectralField(g, Parity::sine), eps, p, BandState(0.3, 1e-2, BandKind::tau));
    double e = s.diag.energy;
    for (int n = 0; n < 200; ++n) {
      step_pe(s, p, bank);
      ASSERT_LT(s.diag.divergence, 1e-8);
      ASSERT_LT(s.diag.wall_flux, 1e-12);
      EXPECT_LE(s.diag.energy, e);
      e = s.diag.energy;
    }
    EXPECT_LT(s.tau->radius(), 0.3);
  }
}

TEST(StepPe, TemporalOrder) {
  const auto g = make_grid(8, 16);
  const auto bank = build_filter_bank(g);
  fixture::Manufactured ms{0.5};
  for (int order : {1, 2}) {
    std::vector<double> errs;
    for (double dt : {0.02, 0.01, 0.005}) {
      StepParams p;
      p.dt = dt;
      p.order = order;
      p.forcing = ms.forcing();
      auto s = make_pe_state(ms.u_field(g, 0), ms.T_field(g, 0), ms.eps, p);
      const int n = static_cast<int>(std::lround(0.4 / dt));
      for (int i = 0; i < n; ++i) step_pe(s, p, bank);
      errs.push_back(l2_norm(s.u - ms.u_field(g, s.t)) + l2_norm(s.T - ms.T_field(g, s.t)));
    }
    for (std::size_t i = 1; i < errs.size(); ++i)
      EXPECT_NEAR(std::log2(errs[i - 1] / errs[i]), order, 0.15) << "order " << order;
  }
}

TEST(StepPe, DenseBoussinesqReference) {
  const auto g = make_grid(8, 8);
  const auto bank = build_filter_bank(g);
  std::mt19937_64 rng(21);
  auto u = compatible_random(g, rng, g.dealias_cutoff(), 6, 0.3);
  auto T = 0.3 * fixture::random_sine_field(g, rng, 0, g.dealias_cutoff(), 6);
  StepParams p;
  p.dt = 1e-3;
  for (bool split : {true, false}) {
    p.hydrostatic_split = split;
    auto s = make_pe_state(u, T, 1.0, p);
    SpectralField ru = u, rt = T;
    DenseReference ref(g, 1.0, p.dt);
    for (int n = 0; n < 10; ++n) {
      step_pe(s, p, bank);
      ref.step(ru, rt);
    }
    EXPECT_LT(l2_norm(s.u - ru), 1e-6 * l2_norm(ru));
    EXPECT_LT(l2_norm(s.T - rt), 1e-6 * l2_norm(rt));
    EXPECT_LT(l2_norm(s.u - ru), 1e-12);
  }
}

TEST(StepPe, StiffnessGuardOnlyWithoutSplit) {
  const auto g = make_grid(16, 16);
  const auto bank = build_filter_bank(g);
  const auto T = fixture::sample(g, Parity::sine, [](double x, double y) {
    return std::sin(pi * y) * std::cos(x);
  });
  StepParams p;
  p.dt = 1e-2;
  p.hydrostatic_split = false;
  auto s = make_pe_state(SpectralField(g, Parity::sine), T, 0.05, p);
  EXPECT_THROW(step_pe(s, p, bank), step_error);
  p.hydrostatic_split = true;
  auto s2 = make_pe_state(SpectralField(g, Parity::sine), T, 0.05, p);
  EXPECT_NO_THROW(step_pe(s2, p, bank));
}

TEST(PePressure, HydrostaticResidualShrinksWithEps) {
  const auto g = make_grid(16, 32);
  const auto bank = build_filter_bank(g);
  std::mt19937_64 rng(14);
  const auto u = compatible_random(g, rng, 3, 5, 0.2);
  const auto T = 0.2 * fixture::random_sine_field(g, rng, 1, 3, 5);
  StepParams p;
  p.dt = 1e-3;
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    auto s = make_pe_state(u, T, eps, p);
    for (int n = 0; n < 50; ++n) step_pe(s, p, bank);
    const double r = hydrostatic_residual(s, pe_pressure(s, p));
    EXPECT_LT(r, prev) << "eps " << eps;
    prev = r;
  }
}

TEST(PePressure, RestStateIsHydrostatic) {
  const auto g = make_grid(16, 16);
  const auto T = fixture::sample(g, Parity::sine, [](double, double y) {
    return std::sin(pi * y) - 0.5 * std::sin(2 * pi * y);
  });
  for (double eps : {1.0, 0.1}) {
    const auto s = make_pe_state(SpectralField(g, Parity::sine), T, eps, StepParams{});
    EXPECT_LT(hydrostatic_residual(s, pe_pressure(s, StepParams{})), 1e-12);
  }
}
