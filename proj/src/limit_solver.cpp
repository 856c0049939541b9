#include "hpe/limit_solver.hpp"

#include <numbers>
#include <sstream>

namespace hpe {

namespace {

void refresh(LimitState& s) {
  s.v = v_from_u(s.u);
  s.px = pressure_gradient_limit(s.u, s.T);
  s.diag = galerkin::diagnose(s.u, s.v, 0.0);
}

}  // namespace

LimitState make_limit_state(const SpectralField& u0, const SpectralField& T0,
                            const StepParams& params, std::optional<BandState> theta) {
  params.validate();
  if (u0.parity() != Parity::sine || T0.parity() != Parity::sine)
    throw std::invalid_argument("limit state: u and T must be sine fields");
  if (!(u0.grid() == T0.grid())) throw std::invalid_argument("limit state: grids differ");
  galerkin::require_compatible(u0);
  LimitState s;
  s.u = u0;
  s.T = T0;
  s.u.clean();
  s.T.clean();
  s.memory.column_gauge = galerkin::resolve_column_gauge(params.mean_gauge, s.u) ? 1 : 0;
  s.theta = std::move(theta);
  if (s.theta && s.theta->kind != BandKind::theta)
    throw std::invalid_argument("limit state: band must be of kind theta");
  s.ops.emplace(u0.grid(), 0.0);
  refresh(s);
  return s;
}

SpectralField pressure_gradient_limit(const SpectralField& u, const SpectralField& T) {
  const StripGrid& g = u.grid();
  const double pi = std::numbers::pi;
  SpectralField px(g, Parity::cosine);
  const SpectralField uu = padded_product(u, u, Parity::cosine, true);
  for (int k = 1; k < g.modes_x() - 1; ++k) {
    const cplx ik{0.0, g.wavenumber(k)};
    cplx jump{};
    for (int m = 1; m < g.ny; ++m) {
      px(k, m) = -ik * T(k, m) / (m * pi);
      jump += u(k, m) * (m * pi) * ((m % 2 == 0) ? 0.0 : -2.0);
    }
    px(k, 0) = jump - ik * uu(k, 0);
  }
  return px;
}

Tendency rhs_limit(const LimitState& state, const StepParams& params) {
  const galerkin::Operators ops = state.ops ? *state.ops : galerkin::Operators(state.u.grid(), 0.0);
  const bool column = state.memory.column_gauge >= 0
                          ? state.memory.column_gauge == 1
                          : galerkin::resolve_column_gauge(params.mean_gauge, state.u);
  return galerkin::tendency(ops, state.u, state.T, state.t, params, column);
}

void step_limit(LimitState& state, const StepParams& params, const DyadicFilterBank& bank) {
  if (!state.ops) state.ops.emplace(state.u.grid(), 0.0);
  if (state.theta) {
    const double r = state.theta->radius();
    state.theta = advance_theta(*state.theta, apply_weight(state.u, r), params.dt, bank);
  }
  galerkin::advance(*state.ops, state.u, state.T, state.t, params, state.memory,
                    static_cast<int>(state.steps));
  state.t += params.dt;
  ++state.steps;
  refresh(state);
  if (state.theta && state.theta->exhausted) {
    std::ostringstream os;
    os << "analytic band exhausted: theta radius " << state.theta->radius() << " at step "
       << state.steps << " (t = " << state.t << ")";
    throw band_exhausted(os.str());
  }
}

}  // namespace hpe
