#include "hpe/pe_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hpe {

namespace {

constexpr double pi = std::numbers::pi;

void refresh(PEState& s) {
  s.v = v_from_u(s.u);
  s.diag = galerkin::diagnose(s.u, s.v, s.eps);
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
}

}  // namespace

PEState make_pe_state(const SpectralField& u0, const SpectralField& T0, double eps,
                      const StepParams& params, std::optional<BandState> tau) {
  params.validate();
  require_eps(eps);
  if (u0.parity() != Parity::sine || T0.parity() != Parity::sine)
    throw std::invalid_argument("PE state: u and T must be sine fields");
  if (!(u0.grid() == T0.grid())) throw std::invalid_argument("PE state: grids differ");
  galerkin::require_compatible(u0);
  PEState s;
  s.eps = eps;
  s.u = u0;
  s.T = T0;
  s.u.clean();
  s.T.clean();
  s.memory.column_gauge = galerkin::resolve_column_gauge(params.mean_gauge, s.u) ? 1 : 0;
  s.tau = std::move(tau);
  if (s.tau && s.tau->kind != BandKind::tau)
    throw std::invalid_argument("PE state: band must be of kind tau");
  s.ops.emplace(u0.grid(), eps);
  refresh(s);
  return s;
}

ThinStripFields rescale_to_physical(const PEState& state, const SpectralField& p) {
  ThinStripFields f;
  f.eps = state.eps;
  f.U1 = state.u;
  f.U2 = state.eps * state.v;
  f.T = state.T;
  f.P = p.grid().nx > 0 ? p : SpectralField(state.u.grid(), Parity::cosine);
  return f;
}

double thin_divergence(const ThinStripFields& f) {
  // d/dy = eps^-1 d/dybar; area element eps dx dybar
  SpectralField div = ddx(f.U1) + (1.0 / f.eps) * ddy(f.U2);
  return std::sqrt(f.eps) * l2_norm(div);
}

SpectralField anisotropic_pressure_solve(const SpectralField& rhs,
                                         const std::vector<cplx>& bottom,
                                         const std::vector<cplx>& top, double eps) {
  require_eps(eps);
  const StripGrid& g = rhs.grid();
  const SpectralField r = rhs.parity() == Parity::cosine ? rhs
                          : rhs.parity() == Parity::collocation
                              ? from_collocation(rhs, Parity::cosine)
                              : throw std::invalid_argument(
                                    "anisotropic_pressure_solve: rhs must be cosine or collocation");
  auto data = [&](const std::vector<cplx>& d, int k) {
    if (d.empty()) return cplx{};
    if (static_cast<int>(d.size()) != g.modes_x())
      throw std::invalid_argument("anisotropic_pressure_solve: boundary data size mismatch");
    return d[k];
  };
  const double ie2 = 1.0 / (eps * eps);
  const int n = g.ny;
  SpectralField nodes(g, Parity::collocation);  // homogeneous / quadratic parts
  SpectralField p(g, Parity::cosine);

  const cplx g0 = data(bottom, 0), g1 = data(top, 0);
  const cplx defect = ie2 * (g1 - g0) - r(0, 0);
  if (std::abs(defect) > 1e-10) {
    std::ostringstream os;
    os << "anisotropic_pressure_solve: k = 0 solvability defect " << std::abs(defect);
    throw std::domain_error(os.str());
  }
  for (int m = 1; m <= n; ++m) p(0, m) = r(0, m) / (-ie2 * m * m * pi * pi);
  for (int j = 0; j <= n; ++j) {
    const double y = double(j) / n;
    nodes(0, j) = g0 * y + 0.5 * (g1 - g0) * y * y;
  }
  for (int k = 1; k < g.modes_x() - 1; ++k) {
    const double kap = g.wavenumber(k);
    for (int m = 0; m <= n; ++m) p(k, m) = r(k, m) / (-kap * kap - ie2 * m * m * pi * pi);
    const cplx b0 = data(bottom, k), b1 = data(top, k);
    if (b0 == cplx{} && b1 == cplx{}) continue;
    // h'' = s^2 h, h'(0) = b0, h'(1) = b1
    const double s = eps * kap;
    const double den = s * -std::expm1(-2.0 * s);
    for (int j = 0; j <= n; ++j) {
      const double y = double(j) / n;
      // cosh(s y) / (s sinh s) and cosh(s (1 - y)) / (s sinh s), scaled
      const double cy = (std::exp(s * (y - 1.0)) + std::exp(-s * (y + 1.0))) / den;
      const double cr = (std::exp(-s * y) + std::exp(s * (y - 2.0))) / den;
      nodes(k, j) = b1 * cy - b0 * cr;
    }
  }
  p += from_collocation(nodes, Parity::cosine);
  p(0, 0) = 0.0;
  p.clean();
  return p;
}

SpectralField pe_pressure(const PEState& state, const StepParams& params) {
  const StripGrid& g = state.u.grid();
  const StripGrid fine = refined_vertically(g);
  const double eps = state.eps;
  const bool d = params.dealias;
  const SpectralField uf = resize_vertical(state.u, fine);
  const SpectralField vf = v_from_u(uf);
  const SpectralField tf = resize_vertical(state.T, fine);
  const SpectralField ux = ddx(uf);
  const int n2 = fine.ny;
  auto phys = [&](const SpectralField& f) { return to_physical(f, n2, d); };
  const PhysicalField pu = phys(uf), pv = phys(vf), pux = phys(ux), puy = phys(ddy(uf)),
                      pvx = phys(ddx(vf));
  PhysicalField nu(g.nx, n2), nv(g.nx, n2);
  for (std::size_t i = 0; i < nu.values.size(); ++i) {
    nu.values[i] = pu.values[i] * pux.values[i] + pv.values[i] * puy.values[i];
    nv.values[i] = pu.values[i] * pvx.values[i] - pv.values[i] * pux.values[i];
  }
  const SpectralField cu = from_physical(nu, fine, Parity::cosine, d);
  const SpectralField sv = from_physical(nv, fine, Parity::sine, d);
  SpectralField rhs = (1.0 / (eps * eps)) * ddy(tf);
  rhs -= ddx(cu);
  rhs -= ddy(sv);
  const SpectralField vyy = ddy(ddy(vf));
  std::vector<cplx> bottom = wall_trace(vyy, 0), top = wall_trace(vyy, 1);
  for (auto& c : bottom) c *= eps * eps;
  for (auto& c : top) c *= eps * eps;
  // the k = 0 balance holds exactly; remove round-off before the check
  bottom[0] = top[0] = 0.0;
  rhs(0, 0) = 0.0;
  return resize_vertical(anisotropic_pressure_solve(rhs, bottom, top, eps), g);
}

double hydrostatic_residual(const PEState& state, const SpectralField& p) {
  return l2_norm(ddy(p) - state.T);
}

Tendency rhs_pe(const PEState& state, const StepParams& params) {
  const galerkin::Operators ops =
      state.ops ? *state.ops : galerkin::Operators(state.u.grid(), state.eps);
  const bool column = state.memory.column_gauge >= 0
                          ? state.memory.column_gauge == 1
                          : galerkin::resolve_column_gauge(params.mean_gauge, state.u);
  return galerkin::tendency(ops, state.u, state.T, state.t, params, column);
}

void step_pe(PEState& state, const StepParams& params, const DyadicFilterBank& bank) {
  if (!state.ops) state.ops.emplace(state.u.grid(), state.eps);
  if (state.tau) {
    const double r = state.tau->radius();
    state.tau = advance_tau(*state.tau, apply_weight(state.u, r), apply_weight(state.v, r),
                            state.eps, params.dt, bank);
  }
  galerkin::advance(*state.ops, state.u, state.T, state.t, params, state.memory,
                    static_cast<int>(state.steps));
  state.t += params.dt;
  ++state.steps;
  refresh(state);
  if (state.tau && state.tau->exhausted) {
    std::ostringstream os;
    os << "analytic band exhausted: tau radius " << state.tau->radius() << " at step "
       << state.steps << " (t = " << state.t << ")";
    throw band_exhausted(os.str());
  }
}

}  // namespace hpe
