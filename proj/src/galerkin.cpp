#include "hpe/galerkin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hpe {

void StepParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(R > 0.0 && R < std::numbers::pi * std::numbers::pi))
    throw std::invalid_argument("R must lie in (0, pi^2)");
  if (order != 1 && order != 2) throw std::invalid_argument("scheme order must be 1 or 2");
  if (!(cfl_limit > 0.0)) throw std::invalid_argument("cfl limit must be positive");
  if (!(stiffness_safety > 0.0)) throw std::invalid_argument("stiffness safety must be positive");
}

SpectralField v_from_u(const SpectralField& u) {
  if (u.parity() != Parity::sine) throw std::invalid_argument("v_from_u: u must be a sine field");
  const StripGrid& g = u.grid();
  const double pi = std::numbers::pi;
  SpectralField v(g, Parity::cosine);
  for (int k = 1; k < g.modes_x() - 1; ++k) {
    const cplx ik{0.0, g.wavenumber(k)};
    cplx acc{};
    for (int m = 1; m < g.ny; ++m) {
      const cplx c = ik * u(k, m) / (m * pi);
      v(k, m) = c;
      acc += c;
    }
    v(k, 0) = -acc;
  }
  return v;
}

namespace {

double sup_over_x(const std::vector<cplx>& spec, int nx) {
  std::vector<cplx> s = spec;
  s[0].imag(0.0);
  s[nx / 2] = 0.0;
  std::vector<double> vals(nx);
  ht::inverse(nx, s, vals);
  double m = 0.0;
  for (double x : vals) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double wall_flux(const SpectralField& u) {
  return sup_over_x(wall_trace(v_from_u(u), 1), u.grid().nx);
}

namespace galerkin {

namespace {
constexpr double pi = std::numbers::pi;

cplx column_integral_of_mode(const SpectralField& u, int k) {
  cplx acc{};
  for (int m = 1; m < u.grid().ny; m += 2) acc += u(k, m) * (2.0 / (m * pi));
  return acc;
}

}  // namespace

Operators::Operators(const StripGrid& grid, double eps) : grid_(grid), eps_(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
  const int ny = grid.ny;
  g_.assign(ny + 1, 0.0);
  g2_.assign(ny + 1, 0.0);
  c_.assign(ny + 1, 0.0);
  for (int m = 1; m < ny; ++m) {
    g_[m] = 1.0 / (m * pi);
    g2_[m] = g_[m] * g_[m];
    c_[m] = (m % 2 == 1) ? 2.0 * g_[m] : 0.0;
  }
  const int n2 = 2 * ny + 1;
  s_.assign(static_cast<std::size_t>(n2) * n2, 0.0);
  for (int m = 0; m < n2; ++m)
    for (int n = 0; n < n2; ++n)
      if ((m + n) % 2 == 1)
        s_[static_cast<std::size_t>(m) * n2 + n] = 2.0 * m / (pi * (double(m) * m - double(n) * n));
}

void Operators::apply_mass(int k, std::span<const cplx> a, std::span<cplx> out) const {
  const double kap = grid_.wavenumber(k);
  const double e2 = eps_ * eps_ * kap * kap;
  cplx ga{};
  for (int m = 1; m < grid_.ny; ++m) ga += g_[m] * a[m];
  out[0] = out[grid_.ny] = 0.0;
  for (int m = 1; m < grid_.ny; ++m) out[m] = 0.5 * a[m] + e2 * (g_[m] * ga + 0.5 * g2_[m] * a[m]);
}

void Operators::apply_stiffness(int k, std::span<const cplx> a, std::span<cplx> out) const {
  const double kap = grid_.wavenumber(k);
  const double e2 = eps_ * eps_ * kap * kap;
  cplx ga{};
  for (int m = 1; m < grid_.ny; ++m) ga += g_[m] * a[m];
  out[0] = out[grid_.ny] = 0.0;
  for (int m = 1; m < grid_.ny; ++m)
    out[m] = (0.5 * m * m * pi * pi + e2) * a[m] + e2 * e2 * (g_[m] * ga + 0.5 * g2_[m] * a[m]);
}

void Operators::solve(int k, double alpha, std::span<cplx> r, bool is_constrained) const {
  const int ny = grid_.ny;
  const double kap = grid_.wavenumber(k);
  const double e2 = eps_ * eps_ * kap * kap;
  const double beta = e2 + alpha * e2 * e2;
  std::vector<double> dinv(ny + 1, 0.0);
  double gdg = 0.0;
  for (int m = 1; m < ny; ++m) {
    dinv[m] = 1.0 / (0.5 + alpha * (0.5 * m * m * pi * pi + e2) + 0.5 * g2_[m] * beta);
    gdg += g_[m] * dinv[m] * g_[m];
  }
  const double denom = 1.0 + beta * gdg;
  // Sherman-Morrison: (D + beta g g^T)^-1 x
  auto apply_inverse = [&](auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T gx{};
    for (int m = 1; m < ny; ++m) gx += g_[m] * dinv[m] * x[m];
    const T f = beta * gx / denom;
    for (int m = 1; m < ny; ++m) x[m] = dinv[m] * (x[m] - f * g_[m]);
  };
  apply_inverse(r);
  if (is_constrained) {
    std::vector<double> z(c_);
    apply_inverse(z);
    double cz = 0.0;
    cplx cy{};
    for (int m = 1; m < ny; ++m) {
      cz += c_[m] * z[m];
      cy += c_[m] * r[m];
    }
    const cplx nu = -cy / cz;
    for (int m = 1; m < ny; ++m) r[m] += nu * z[m];
  }
  r[0] = r[ny] = 0.0;
}

double Operators::heat_rate(int k, int m) const {
  const double kap = grid_.wavenumber(k);
  return kap * kap + m * m * pi * pi;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    nodes[i] = 0.5 * (1.0 - z);
    weights[i] = 1.0 / ((1.0 - z * z) * dp * dp);  // 2/((1-z^2)p'^2) scaled to (0,1)
  }
}

namespace {

/// Horizontal spectrum of f(t, x_i, y_g) at each Gauss node: [g][k].
std::vector<std::vector<cplx>> sample_forcing(const Forcing::Fn& f, const StripGrid& grid,
                                              double t, const std::vector<double>& y) {
  std::vector<std::vector<cplx>> out(y.size(), std::vector<cplx>(grid.modes_x()));
  std::vector<double> row(grid.nx);
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (int i = 0; i < grid.nx; ++i) row[i] = f(t, i * grid.lx / grid.nx, y[j]);
    ht::forward(grid.nx, row, out[j]);
  }
  return out;
}

void add_forcing(const Operators& ops, const StepParams& params, double t, Loads& loads) {
  const Forcing& fc = params.forcing;
  if (!fc.active()) return;
  const StripGrid& g = ops.grid();
  std::vector<double> y, w;
  gauss_legendre(2 * g.ny + 16, y, w);
  const std::size_t ng = y.size();
  std::vector<double> sn(static_cast<std::size_t>(g.ny) * ng), cs(sn.size());
  for (int m = 1; m < g.ny; ++m)
    for (std::size_t j = 0; j < ng; ++j) {
      sn[m * ng + j] = w[j] * std::sin(m * pi * y[j]);
      cs[m * ng + j] = w[j] * (1.0 - std::cos(m * pi * y[j]));
    }
  auto project = [&](const Forcing::Fn& f, const std::vector<double>& table, SpectralField& dst,
                     auto scale) {
    const auto spec = sample_forcing(f, g, t, y);
    for (int k = 0; k < g.modes_x() - 1; ++k)
      for (int m = 1; m < g.ny; ++m) {
        cplx acc{};
        for (std::size_t j = 0; j < ng; ++j) acc += table[m * ng + j] * spec[j][k];
        dst(k, m) += scale(k, m) * acc;
      }
  };
  auto one = [](int, int) { return cplx{1.0, 0.0}; };
  if (fc.u) project(fc.u, sn, loads.bu, one);
  if (fc.T) project(fc.T, sn, loads.bt, one);
  if (fc.v && ops.eps() > 0.0) {
    const double e2 = ops.eps() * ops.eps();
    project(fc.v, cs, loads.bu, [&](int k, int m) {
      return cplx{0.0, e2 * g.wavenumber(k) * ops.g(m)};
    });
  }
}

}  // namespace

SpectralField buoyancy_load(const Operators& ops, const SpectralField& T, bool split) {
  const StripGrid& g = ops.grid();
  SpectralField b(g, Parity::sine);
  for (int k = 1; k < g.modes_x() - 1; ++k) {
    const cplx ik{0.0, g.wavenumber(k)};
    if (split) {
      // p_h = int_0^y T: cosine coefficients c_0 = sum t_n g_n, c_n = -t_n g_n
      cplx c0{};
      for (int n = 1; n < g.ny; ++n) c0 += T(k, n) * ops.g(n);
      for (int m = 1; m < g.ny; ++m) {
        cplx acc = c0 * ops.overlap(m, 0);
        for (int n = 1; n < g.ny; ++n) acc -= T(k, n) * ops.g(n) * ops.overlap(m, n);
        b(k, m) = -ik * acc;
      }
    } else {
      cplx base{};
      for (int n = 1; n < g.ny; ++n) base += T(k, n) * ops.overlap(n, 0);
      for (int m = 1; m < g.ny; ++m) {
        cplx acc = base;
        for (int n = 1; n < g.ny; ++n) acc -= T(k, n) * ops.overlap(n, m);
        b(k, m) = ik * ops.g(m) * acc;
      }
    }
  }
  return b;
}

Loads explicit_loads(const Operators& ops, const SpectralField& u, const SpectralField& T,
                     double t, const StepParams& params) {
  const StripGrid& g = ops.grid();
  const StripGrid fine = refined_vertically(g);
  const int n2 = fine.ny;
  const bool d = params.dealias;
  const double eps = ops.eps();

  const SpectralField v = v_from_u(u);
  const SpectralField ux = ddx(u);
  auto phys = [&](const SpectralField& f) { return to_physical(f, n2, d); };
  const PhysicalField pu = phys(u), pv = phys(v), pux = phys(ux), puy = phys(ddy(u));
  const PhysicalField ptx = phys(ddx(T)), pty = phys(ddy(T));

  PhysicalField nu(g.nx, n2), nt(g.nx, n2);
  for (std::size_t i = 0; i < nu.values.size(); ++i) {
    nu.values[i] = pu.values[i] * pux.values[i] + pv.values[i] * puy.values[i];
    nt.values[i] = pu.values[i] * ptx.values[i] + pv.values[i] * pty.values[i];
  }
  const SpectralField cu = from_physical(nu, fine, Parity::cosine, d);
  const SpectralField ct = from_physical(nt, fine, Parity::cosine, d);
  SpectralField sv;
  if (eps > 0.0) {
    const PhysicalField pvx = phys(ddx(v));
    PhysicalField nv(g.nx, n2);
    // v_y = -u_x
    for (std::size_t i = 0; i < nv.values.size(); ++i)
      nv.values[i] = pu.values[i] * pvx.values[i] - pv.values[i] * pux.values[i];
    sv = from_physical(nv, fine, Parity::sine, d);
  }

  Loads loads{SpectralField(g, Parity::sine), SpectralField(g, Parity::sine), pu.max_abs(), 0.0};
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    cplx vbase{};
    if (eps > 0.0)
      for (int n = 1; n < n2; n += 2) vbase += sv(k, n) * ops.overlap(n, 0);
    const cplx ik{0.0, g.wavenumber(k)};
    for (int m = 1; m < g.ny; ++m) {
      cplx au{}, at{};
      for (int n = 1 - m % 2; n <= n2; n += 2) {
        const double s = ops.overlap(m, n);
        au -= cu(k, n) * s;
        at -= ct(k, n) * s;
      }
      if (eps > 0.0 && k > 0) {
        cplx av = vbase;
        for (int n = 1 - m % 2; n < n2; n += 2) av -= sv(k, n) * ops.overlap(n, m);
        au -= eps * eps * ik * ops.g(m) * av;
      }
      loads.bu(k, m) = au;
      loads.bt(k, m) = at;
    }
  }
  loads.bu += buoyancy_load(ops, T, params.hydrostatic_split);
  if (!params.hydrostatic_split) loads.max_t = to_physical(T).max_abs();
  add_forcing(ops, params, t, loads);
  return loads;
}

bool resolve_column_gauge(MeanGauge gauge, const SpectralField& u0) {
  switch (gauge) {
    case MeanGauge::zero: return false;
    case MeanGauge::column: return true;
    case MeanGauge::automatic: break;
  }
  const double mean = std::abs(column_integral_of_mode(u0, 0));
  return mean <= 1e-12 * std::max(l2_norm(u0), 1e-300);
}

void require_compatible(const SpectralField& u, double tol) {
  const double scale = std::max(l2_norm(u), 1e-300);
  for (int k = 1; k < u.grid().modes_x() - 1; ++k) {
    const double c = std::abs(column_integral_of_mode(u, k));
    if (c > tol * scale) {
      std::ostringstream os;
      os << "initial u violates int_0^1 u dy = 0 at mode k=" << k << " (|mean| = " << c << ")";
      throw step_error(os.str());
    }
  }
}

void advance(const Operators& ops, SpectralField& u, SpectralField& T, double t,
             const StepParams& params, SchemeMemory& memory, int step_index) {
  const StripGrid& g = ops.grid();
  if (memory.column_gauge < 0)
    memory.column_gauge = resolve_column_gauge(params.mean_gauge, u) ? 1 : 0;
  const double dt = params.dt;
  Loads loads = explicit_loads(ops, u, T, t, params);
  auto context = [&] {
    std::ostringstream os;
    os << " at step " << step_index << " (t = " << t << ")";
    return os.str();
  };
  if (!loads.bu.all_finite() || !loads.bt.all_finite() || !u.all_finite() || !T.all_finite())
    throw step_error("non-finite value in the nonlinear terms" + context());
  const double cfl = loads.max_u * dt * g.nx / g.lx;
  if (cfl > params.cfl_limit) {
    std::ostringstream os;
    os << "CFL violated: |u|max*dt*Nx/Lx = " << cfl << " > " << params.cfl_limit;
    throw step_error(os.str() + context());
  }
  if (!params.hydrostatic_split && ops.eps() > 0.0 && loads.max_t > 0.0) {
    const double bound = ops.eps() * ops.eps() * params.stiffness_safety / loads.max_t;
    if (dt > bound) {
      std::ostringstream os;
      os << "stiffness guard: dt = " << dt << " exceeds eps^2*safety/max|T| = " << bound;
      throw step_error(os.str() + context());
    }
  }

  const bool ab2 = params.order == 2 && memory.has_previous;
  const bool column = memory.column_gauge == 1;
  const int rows = g.rows_y();
  std::vector<cplx> ma(rows), ka(rows), r(rows);
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    auto a = u.mode(k);
    ops.apply_mass(k, a, ma);
    double alpha = dt;
    if (ab2) {
      ops.apply_stiffness(k, a, ka);
      alpha = 0.5 * dt;
      for (int m = 1; m < g.ny; ++m)
        r[m] = ma[m] - 0.5 * dt * ka[m] +
               dt * (1.5 * loads.bu(k, m) - 0.5 * memory.bu_prev(k, m));
    } else if (params.order == 2) {
      // Crank-Nicolson start with the explicit part taken at t_n
      ops.apply_stiffness(k, a, ka);
      alpha = 0.5 * dt;
      for (int m = 1; m < g.ny; ++m) r[m] = ma[m] - 0.5 * dt * ka[m] + dt * loads.bu(k, m);
    } else {
      for (int m = 1; m < g.ny; ++m) r[m] = ma[m] + dt * loads.bu(k, m);
    }
    ops.solve(k, alpha, r, constrained(k, column));
    std::copy(r.begin(), r.end(), a.begin());

    auto b = T.mode(k);
    for (int m = 1; m < g.ny; ++m) {
      const double lam = ops.heat_rate(k, m);
      if (params.order == 2) {
        const cplx load =
            ab2 ? 1.5 * loads.bt(k, m) - 0.5 * memory.bt_prev(k, m) : loads.bt(k, m);
        b[m] = ((0.5 - 0.25 * dt * lam) * b[m] + dt * load) / (0.5 + 0.25 * dt * lam);
      } else {
        b[m] = (0.5 * b[m] + dt * loads.bt(k, m)) / (0.5 + 0.5 * dt * lam);
      }
    }
  }
  u.clean();
  T.clean();
  memory.bu_prev = std::move(loads.bu);
  memory.bt_prev = std::move(loads.bt);
  memory.has_previous = true;
}

Tendency tendency(const Operators& ops, const SpectralField& u, const SpectralField& T, double t,
                  const StepParams& params, bool column_gauge) {
  const StripGrid& g = ops.grid();
  Loads loads = explicit_loads(ops, u, T, t, params);
  Tendency out{SpectralField(g, Parity::sine), SpectralField(g, Parity::sine),
               SpectralField(g, Parity::sine), SpectralField(g, Parity::sine), {}};
  std::vector<cplx> r(g.rows_y());
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    const bool c = constrained(k, column_gauge);
    auto be = loads.bu.mode(k);
    std::copy(be.begin(), be.end(), r.begin());
    ops.solve(k, 0.0, r, c);
    std::copy(r.begin(), r.end(), out.du_explicit.mode(k).begin());
    ops.apply_stiffness(k, u.mode(k), r);
    for (auto& x : r) x = -x;
    ops.solve(k, 0.0, r, c);
    std::copy(r.begin(), r.end(), out.du_diffusion.mode(k).begin());
    for (int m = 1; m < g.ny; ++m) {
      out.dT_explicit(k, m) = 2.0 * loads.bt(k, m);
      out.dT_diffusion(k, m) = -ops.heat_rate(k, m) * T(k, m);
    }
  }
  out.dv = v_from_u(out.du());
  return out;
}

Diagnostics diagnose(const SpectralField& u, const SpectralField& v, double eps) {
  Diagnostics d;
  const StripGrid& g = u.grid();
  d.divergence = l2_norm(ddx(u) + ddy(v));
  d.wall_flux = sup_over_x(wall_trace(v, 1), g.nx);
  const double nu = l2_norm(u);
  if (nu > 0.0) {
    double m = 0.0;
    for (double c : column_integral(u)) m = std::max(m, std::abs(c));
    d.column_mean = m / nu;
  }
  d.energy = 0.5 * (nu * nu + eps * eps * l2_norm_sq(v));
  d.max_u = to_physical(u).max_abs();
  return d;
}

}  // namespace galerkin
}  // namespace hpe
