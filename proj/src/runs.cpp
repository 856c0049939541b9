#include "hpe/runs.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hpe/limit_solver.hpp"
#include "hpe/pe_solver.hpp"

namespace hpe {

InitialData heat_data(const StripGrid& grid, double amplitude) {
  InitialData d{SpectralField(grid, Parity::sine), SpectralField(grid, Parity::sine)};
  d.u0(0, 1) = amplitude;
  return d;
}

SpectralField compatibility_projection(const SpectralField& u) {
  const StripGrid& g = u.grid();
  SpectralField out = u;
  const double pi = std::numbers::pi;
  double cc = 0.0;
  for (int m = 1; m < g.ny; m += 2) cc += 4.0 / (m * m * pi * pi);
  for (int k = 1; k < g.modes_x(); ++k) {
    cplx ca{};
    for (int m = 1; m < g.ny; m += 2) ca += 2.0 / (m * pi) * out(k, m);
    for (int m = 1; m < g.ny; m += 2) out(k, m) -= ca / cc * (2.0 / (m * pi));
  }
  return out;
}

double data_size(const SpectralField& u, const SpectralField& T, double a,
                 const DyadicFilterBank& bank) {
  return besov_norm_with_mean(apply_weight(u, a), 0.5, bank) +
         besov_norm_with_mean(apply_weight(T, a), 0.5, bank);
}

InitialData analytic_band_data(const StripGrid& grid, int bands, int vertical_modes, double sigma,
                               std::uint64_t seed, double a, double size,
                               const DyadicFilterBank& bank) {
  if (bands < 1 || bands >= grid.modes_x() - 1)
    throw std::invalid_argument("analytic_band_data: bands outside the grid");
  if (vertical_modes < 1 || vertical_modes >= grid.ny)
    throw std::invalid_argument("analytic_band_data: vertical_modes outside the grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  InitialData d{SpectralField(grid, Parity::sine), SpectralField(grid, Parity::sine)};
  for (SpectralField* f : {&d.u0, &d.T0})
    for (int k = 1; k <= bands; ++k)
      for (int m = 1; m <= vertical_modes; ++m) {
        const double r = std::exp(-sigma * grid.wavenumber(k)) / m;
        (*f)(k, m) = r * cplx{n(rng), n(rng)};
      }
  d.u0 = compatibility_projection(d.u0);
  const double s = data_size(d.u0, d.T0, a, bank);
  if (s > 0.0) {
    d.u0 *= size / s;
    d.T0 *= size / s;
  }
  return d;
}

// --- field snapshots ------------------------------------------------------------

void write_field_csv(std::ostream& os, const SpectralField& f, const std::string& name, double t,
                     const std::vector<std::string>& header) {
  const StripGrid& g = f.grid();
  os.precision(17);
  for (const auto& h : header) os << "# " << h << '\n';
  os << "# name=" << name << '\n'
     << "# t=" << t << '\n'
     << "# Nx=" << g.nx << '\n'
     << "# Ny=" << g.ny << '\n'
     << "# Lx=" << g.lx << '\n'
     << "# parity=" << to_string(f.parity()) << '\n'
     << "k,m,re,im\n";
  for (int k = 0; k < g.modes_x(); ++k)
    for (int m = 0; m <= g.ny; ++m) {
      const cplx c = f(k, m);
      os << k << ',' << m << ',' << c.real() << ',' << c.imag() << '\n';
    }
}

FieldSnapshot read_field_csv(std::istream& is) {
  FieldSnapshot snap;
  int nx = 0, ny = 0;
  double lx = 0.0;
  std::string parity;
  std::string line;
  bool have_rows = false;
  while (std::getline(is, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2), val = line.substr(eq + 1);
      if (key == "name") snap.name = val;
      else if (key == "t") snap.t = std::stod(val);
      else if (key == "Nx") nx = std::stoi(val);
      else if (key == "Ny") ny = std::stoi(val);
      else if (key == "Lx") lx = std::stod(val);
      else if (key == "parity") parity = val;
      continue;
    }
    if (line == "k,m,re,im") {
      snap.field = SpectralField(make_grid(nx, ny, lx), parity_from_string(parity));
      have_rows = true;
      continue;
    }
    if (!have_rows || line.empty()) continue;
    int k = 0, m = 0;
    double re = 0.0, im = 0.0;
    char c1, c2, c3;
    std::istringstream ls(line);
    if (!(ls >> k >> c1 >> m >> c2 >> re >> c3 >> im))
      throw std::runtime_error("field csv: malformed row '" + line + "'");
    if (k < 0 || k >= snap.field.grid().modes_x() || m < 0 || m > ny)
      throw std::runtime_error("field csv: index out of range in '" + line + "'");
    snap.field(k, m) = {re, im};
  }
  if (!have_rows) throw std::runtime_error("field csv: missing coefficient table");
  return snap;
}

FieldSnapshot read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_field_csv(in);
}

// --- runs ---------------------------------------------------------------------

long sample_stride(double dt, double sample_every) {
  return std::max(1L, std::lround(sample_every / dt));
}

double RunRecord::sample_interval() const {
  double h = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    h = std::max(h, samples[i].t - samples[i - 1].t);
  return h;
}

namespace {

RunRecord blank_record(const RunSetup& s, const char* kind) {
  s.params.validate();
  if (!(s.horizon >= 0.0)) throw std::invalid_argument("run: horizon must be nonnegative");
  if (!(s.sample_every > 0.0)) throw std::invalid_argument("run: sample_every must be positive");
  RunRecord r;
  r.kind = kind;
  r.eps = s.eps;
  r.grid = s.grid;
  r.dt = s.params.dt;
  r.R = s.params.R;
  r.a = s.a;
  r.lambda = s.lambda;
  r.horizon = s.horizon;
  return r;
}

void note_diagnostics(RunRecord& r, const Diagnostics& d) {
  r.max_divergence = std::max(r.max_divergence, d.divergence);
  r.max_column_mean = std::max(r.max_column_mean, d.column_mean);
  r.max_wall_flux = std::max(r.max_wall_flux, d.wall_flux);
}

template <class State, class Rhs, class Step, class Part>
void drive(RunRecord& rec, State& state, const RunSetup& setup, const DyadicFilterBank& bank,
           std::optional<BandState> State::*band, Rhs rhs, Step step, Part part) {
  const long total = std::lround(setup.horizon / setup.params.dt);
  const long stride = sample_stride(setup.params.dt, setup.sample_every);
  auto radius = [&] { return (state.*band) ? (state.*band)->radius() : setup.a; };
  auto take = [&] {
    const Tendency tend = rhs(state, setup.params);
    rec.samples.push_back({state.t, radius(), state.u, state.v, state.T, tend.du(), tend.dT()});
  };
  note_diagnostics(rec, state.diag);
  take();
  for (long n = 0; n < total; ++n) {
    rec.eta_part.push_back(part(state, radius()));
    try {
      step(state, setup.params, bank);
    } catch (const band_exhausted& e) {
      rec.status = "band-exhausted";
      rec.message = e.what();
      rec.steps = state.steps;
      if (state.*band) rec.band = *(state.*band);
      return;
    }
    note_diagnostics(rec, state.diag);
    if (state.steps % stride == 0 || n + 1 == total) take();
  }
  rec.steps = state.steps;
  if (state.*band) rec.band = *(state.*band);
}

}  // namespace

RunRecord run_limit(const RunSetup& setup, const InitialData& data, const DyadicFilterBank& bank) {
  RunRecord rec = blank_record(setup, "limit");
  std::optional<BandState> theta;
  if (setup.track_band) theta.emplace(setup.a, setup.lambda, BandKind::theta);
  LimitState state = make_limit_state(data.u0, data.T0, setup.params, theta);
  rec.u0 = state.u;
  rec.v0 = state.v;
  rec.T0 = state.T;
  drive(rec, state, setup, bank, &LimitState::theta, rhs_limit, step_limit,
        [&](const LimitState& s, double r) { return theta_rate(apply_weight(s.u, r), bank); });
  return rec;
}

RunRecord run_pe(const RunSetup& setup, const InitialData& data, const DyadicFilterBank& bank) {
  RunRecord rec = blank_record(setup, "pe");
  std::optional<BandState> tau;
  if (setup.track_band) tau.emplace(setup.a, setup.lambda, BandKind::tau);
  PEState state = make_pe_state(data.u0, data.T0, setup.eps, setup.params, tau);
  rec.u0 = state.u;
  rec.v0 = state.v;
  rec.T0 = state.T;
  const double eps = setup.eps;
  drive(rec, state, setup, bank, &PEState::tau, rhs_pe, step_pe,
        [&](const PEState& s, double r) {
          const SpectralField w = apply_weight(s.u, r);
          return besov_norm_pair(ddy(w), eps * ddx(w), 0.5, bank);
        });
  return rec;
}

}  // namespace hpe
