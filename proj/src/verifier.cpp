#include "hpe/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hpe/limit_solver.hpp"
#include "hpe/pe_solver.hpp"

namespace hpe {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double multiplicity(const StripGrid& g, int k) {
  if (k == 0) return 1.0;
  return k < g.modes_x() - 1 ? 2.0 : 0.0;
}

std::vector<double> growth(const std::vector<double>& t, double R) {
  std::vector<double> f(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) f[i] = std::exp(R * t[i]);
  return f;
}

CertificateStatus judge(double lhs, double rhs, double budget) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return CertificateStatus::violated;
  if (rhs == 0.0) return lhs == 0.0 ? CertificateStatus::degenerate : CertificateStatus::violated;
  return lhs <= budget * rhs ? CertificateStatus::holds : CertificateStatus::violated;
}

}  // namespace

// --- weighted norm histories ------------------------------------------------------

Profile profile(const SpectralField& f) {
  const StripGrid& g = f.grid();
  Profile p(g.modes_x(), 0.0);
  for (int k = 0; k < g.modes_x() - 1; ++k) p[k] = vertical_l2_sq(f, k);
  return p;
}

void accumulate(Profile& a, const Profile& b, double scale) {
  if (a.empty()) a.assign(b.size(), 0.0);
  if (a.size() != b.size()) throw std::invalid_argument("accumulate: profile sizes differ");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += scale * scale * b[k];
}

NormSeries weighted_series(const std::string& name, double s, const std::vector<double>& times,
                           const std::vector<Profile>& profiles,
                           const std::vector<double>& radius, const std::vector<double>& factor,
                           const DyadicFilterBank& bank) {
  const std::size_t n = times.size();
  if (profiles.size() != n || radius.size() != n || factor.size() != n)
    throw std::invalid_argument("weighted_series: history lengths differ");
  const StripGrid& g = bank.grid();
  NormSeries out;
  out.name = name;
  out.s = s;
  out.q_min = bank.q_min();
  for (std::size_t i = 0; i < n; ++i) {
    const Profile& p = profiles[i];
    if (static_cast<int>(p.size()) != g.modes_x())
      throw std::invalid_argument("weighted_series: profile does not match the bank grid");
    std::vector<double> w(g.modes_x());
    for (int k = 0; k < g.modes_x(); ++k) {
      const double e = radius[i] * g.wavenumber(k);
      if (e > weight_exponent_limit && p[k] != 0.0)
        throw std::overflow_error("weighted_series: radius * |xi| = " + std::to_string(e) +
                                  " exceeds 30 at mode k = " + std::to_string(k));
      w[k] = std::exp(2.0 * e) * multiplicity(g, k) * p[k];
    }
    std::vector<double> blocks(bank.block_count());
    for (int q = bank.q_min(); q <= bank.q_max(); ++q) {
      double acc = 0.0;
      for (int k = 1; k < g.modes_x(); ++k) {
        const double ph = bank.phi(q, k);
        if (ph != 0.0) acc += ph * ph * w[k];
      }
      blocks[q - bank.q_min()] = factor[i] * std::sqrt(g.lx * acc);
    }
    out.append(times[i], std::move(blocks), factor[i] * std::sqrt(g.lx * w[0]));
  }
  return out;
}

// --- certificates ---------------------------------------------------------------

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::holds: return "holds";
    case CertificateStatus::violated: return "violated";
    case CertificateStatus::degenerate: return "degenerate";
  }
  return "?";
}

bool CertificateReport::holds() const {
  if (status == CertificateStatus::violated) return false;
  return lhs <= budget * rhs || lhs == 0.0;
}

namespace {

struct History {
  std::vector<double> t, radius, growth;
};

History history(const RunRecord& run) {
  if (run.samples.empty()) throw std::invalid_argument("certificate: run has no samples");
  History h;
  for (const auto& s : run.samples) {
    h.t.push_back(s.t);
    h.radius.push_back(s.radius);
  }
  h.growth = growth(h.t, run.R);
  return h;
}

double initial_norm(const Profile& p, double a, double s, const DyadicFilterBank& bank) {
  return chemin_lerner_norm(weighted_series("initial", s, {0.0}, {p}, {a}, {1.0}, bank), p_inf);
}

CertificateReport base_report(const std::string& name, const RunRecord& run) {
  CertificateReport r;
  r.name = name;
  r.grid = run.grid;
  r.eps = run.eps;
  r.dt = run.dt;
  r.metadata = {{"horizon", run.horizon},
                {"samples", static_cast<double>(run.samples.size())},
                {"a", run.a},
                {"lambda", run.lambda},
                {"R", run.R}};
  return r;
}

void finish(CertificateReport& r, const RunRecord& run, double budget, double normalization) {
  r.budget = budget;
  r.fitted_c = r.rhs > 0.0 ? r.lhs / (normalization * r.rhs) : 0.0;
  r.status = judge(r.lhs, r.rhs, budget);
  if (run.status != "ok") r.status = CertificateStatus::degenerate;
  r.metadata.emplace_back("band_exhausted", run.status != "ok" ? 1.0 : 0.0);
}

}  // namespace

CertificateReport certify_limit_energy(const RunRecord& run, const DyadicFilterBank& bank,
                                       double budget) {
  const History h = history(run);
  std::vector<Profile> ut, dyu;
  for (const auto& s : run.samples) {
    Profile p = profile(s.u);
    accumulate(p, profile(s.T));
    ut.push_back(std::move(p));
    dyu.push_back(profile(ddy(s.u)));
  }
  CertificateReport r = base_report("limit_energy", run);
  const double sup = chemin_lerner_norm(
      weighted_series("uT", 0.5, h.t, ut, h.radius, h.growth, bank), p_inf);
  const double diss =
      chemin_lerner_norm(weighted_series("dyu", 0.5, h.t, dyu, h.radius, h.growth, bank), 2.0);
  r.lhs = sup + 0.5 * diss;
  Profile p0 = profile(run.u0);
  accumulate(p0, profile(run.T0));
  r.rhs = initial_norm(p0, run.a, 0.5, bank);
  r.metadata.emplace_back("sup_term", sup);
  r.metadata.emplace_back("dissipation_term", diss);
  finish(r, run, budget, 2.0);
  return r;
}

CertificateReport certify_dtu(const RunRecord& run, const DyadicFilterBank& bank, double budget,
                              double max_interval) {
  const History h = history(run);
  const double gap = run.sample_interval();
  if (gap > max_interval + 1e-12) {
    std::ostringstream os;
    os << "certify_dtu: samples are " << gap << " apart; rerun with sample_every <= "
       << max_interval;
    throw std::invalid_argument(os.str());
  }
  std::vector<Profile> dt, dy;
  for (const auto& s : run.samples) {
    dt.push_back(profile(s.du));
    dy.push_back(profile(ddy(s.u)));
  }
  CertificateReport r = base_report("limit_dtu", run);
  const double a = chemin_lerner_norm(
      weighted_series("dtu", 1.5, h.t, dt, h.radius, h.growth, bank), 2.0);
  const double b = chemin_lerner_norm(
      weighted_series("dyu", 1.5, h.t, dy, h.radius, h.growth, bank), p_inf);
  r.lhs = a + 0.5 * b;
  const Profile pu = profile(ddy(run.u0)), pt = profile(ddy(run.T0));
  r.rhs = initial_norm(pu, run.a, 1.5, bank) + initial_norm(pu, run.a, 2.5, bank) +
          initial_norm(pt, run.a, 1.5, bank);
  // size condition on the data
  const double u12 = initial_norm(profile(run.u0), run.a, 0.5, bank);
  const double u32 = initial_norm(profile(run.u0), run.a, 1.5, bank);
  const double t32 = initial_norm(profile(run.T0), run.a, 1.5, bank);
  r.metadata.emplace_back("c1_required", u12 * (1.0 + u32 + t32) / run.a);
  r.metadata.emplace_back("lambda_factor", 1.0 + u32 + t32);
  finish(r, run, budget, 1.0);
  return r;
}

CertificateReport certify_pe_energy(const RunRecord& run, const DyadicFilterBank& bank,
                                    double budget) {
  const History h = history(run);
  const double e = run.eps;
  std::vector<Profile> sup, dy, dx, gt;
  for (const auto& s : run.samples) {
    Profile p = profile(s.u);
    accumulate(p, profile(s.v), e);
    accumulate(p, profile(s.T));
    sup.push_back(std::move(p));
    Profile q = profile(ddy(s.u));
    accumulate(q, profile(ddy(s.v)), e);
    dy.push_back(std::move(q));
    Profile x = profile(ddx(s.u));
    accumulate(x, profile(ddx(s.v)), e);
    dx.push_back(std::move(x));
    Profile g = profile(ddx(s.T));
    accumulate(g, profile(ddy(s.T)));
    gt.push_back(std::move(g));
  }
  CertificateReport r = base_report("pe_energy", run);
  const double t1 =
      chemin_lerner_norm(weighted_series("uvT", 0.5, h.t, sup, h.radius, h.growth, bank), p_inf);
  const double t2 =
      chemin_lerner_norm(weighted_series("dy", 0.5, h.t, dy, h.radius, h.growth, bank), 2.0);
  const double t3 =
      e * chemin_lerner_norm(weighted_series("dx", 0.5, h.t, dx, h.radius, h.growth, bank), 2.0);
  const double t4 =
      chemin_lerner_norm(weighted_series("gradT", 0.5, h.t, gt, h.radius, h.growth, bank), 2.0);
  r.lhs = t1 + t2 + t3 + t4;
  Profile p0 = profile(run.u0);
  accumulate(p0, profile(run.v0), e);
  accumulate(p0, profile(run.T0));
  r.rhs = initial_norm(p0, run.a, 0.5, bank);
  r.metadata.emplace_back("sup_term", t1);
  r.metadata.emplace_back("dy_term", t2);
  r.metadata.emplace_back("dx_term", t3);
  r.metadata.emplace_back("gradT_term", t4);
  finish(r, run, budget, 1.0);
  return r;
}

// --- bilinear estimates ------------------------------------------------------------

std::string to_string(LemmaKind k) {
  switch (k) {
    case LemmaKind::uww: return "uww";
    case LemmaKind::vww_u: return "vww-u";
    case LemmaKind::vww_T: return "vww-T";
    case LemmaKind::vvv: return "vvv";
  }
  return "?";
}

LemmaKind lemma_kind_from_string(const std::string& s) {
  if (s == "uww") return LemmaKind::uww;
  if (s == "vww-u") return LemmaKind::vww_u;
  if (s == "vww-T") return LemmaKind::vww_T;
  if (s == "vvv") return LemmaKind::vvv;
  throw std::invalid_argument("unknown lemma kind '" + s + "'");
}

LemmaSample make_lemma_sample(const StripGrid& grid, const LemmaSampleSpec& spec,
                              std::uint64_t seed) {
  if (spec.times < 2 || !(spec.window > 0.0))
    throw std::invalid_argument("make_lemma_sample: need a window with at least two times");
  if (spec.bands >= grid.modes_x() - 1 || spec.vertical_modes >= grid.ny)
    throw std::invalid_argument("make_lemma_sample: band does not fit the grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralField u0(grid, Parity::sine), w0(grid, Parity::sine);
  for (SpectralField* f : {&u0, &w0})
    for (int k = 1; k <= spec.bands; ++k)
      for (int m = 1; m <= spec.vertical_modes; ++m)
        (*f)(k, m) = spec.amplitude * std::exp(-spec.a * grid.wavenumber(k)) * cplx{n(rng), n(rng)};
  LemmaSample out;
  out.eps = spec.eps;
  out.a = spec.a;
  out.lambda = spec.lambda;
  const double pi = std::numbers::pi;
  for (int i = 0; i < spec.times; ++i) {
    const double t = spec.window * i / (spec.times - 1);
    SpectralField u = u0, w = w0;
    for (int k = 0; k < grid.modes_x(); ++k) {
      const double kk = grid.wavenumber(k);
      for (int m = 1; m < grid.ny; ++m) {
        const double d = std::exp(-(kk * kk + m * m * pi * pi) * t);
        u(k, m) *= d;
        w(k, m) *= d;
      }
    }
    out.times.push_back(t);
    out.u.push_back(compatibility_projection(u));
    out.w.push_back(std::move(w));
  }
  return out;
}

double mode_pairing(const SpectralField& f, const SpectralField& g, int k) {
  if (f.grid().nx != g.grid().nx || f.grid().lx != g.grid().lx)
    throw std::invalid_argument("mode_pairing: horizontal grids differ");
  if (f.parity() == Parity::collocation || g.parity() == Parity::collocation)
    throw std::invalid_argument("mode_pairing: sine or cosine fields required");
  const double mult = multiplicity(f.grid(), k);
  if (mult == 0.0) return 0.0;
  const auto a = f.mode(k);
  const auto b = g.mode(k);
  const int na = f.grid().ny, nb = g.grid().ny;
  double acc = 0.0;
  if (f.parity() == g.parity()) {
    const bool cosine = f.parity() == Parity::cosine;
    const int top = std::min(na, nb) - (cosine ? 0 : 1);
    if (cosine) acc += (a[0] * std::conj(b[0])).real();
    for (int m = 1; m <= top; ++m) acc += 0.5 * (a[m] * std::conj(b[m])).real();
  } else {
    const double pi = std::numbers::pi;
    // int_0^1 sin(m pi y) cos(n pi y) dy
    auto sc = [pi](int m, int n) { return 2.0 * m / (pi * (double(m) * m - double(n) * n)); };
    const bool f_sine = f.parity() == Parity::sine;
    const int ns = f_sine ? na : nb, nc = f_sine ? nb : na;
    const auto s = f_sine ? a : b;
    const auto c = f_sine ? b : a;
    for (int m = 1; m < ns; ++m) {
      if (s[m] == cplx{}) continue;
      cplx row{};
      for (int n = (m + 1) % 2; n <= nc; n += 2) row += sc(m, n) * std::conj(c[n]);
      acc += f_sine ? (s[m] * row).real() : (std::conj(s[m]) * std::conj(row)).real();
    }
  }
  return f.grid().lx * mult * acc;
}

namespace {

SpectralField block_of(const SpectralField& f, int j, const DyadicFilterBank& bank) {
  return j < bank.q_min() ? low_pass(f, bank.q_min(), bank) : dyadic_block(f, j, bank);
}

SpectralField bilinear(const SpectralField& a, const SpectralField& b, Parity parity,
                       const DyadicFilterBank& bank, bool bony) {
  if (!bony) return padded_product(a, b, parity, true);
  const int lo = bank.q_min() - 1;
  const int nb = bank.q_max() - lo + 1;
  std::vector<SpectralField> da, db;
  for (int j = lo; j <= bank.q_max(); ++j) {
    da.push_back(block_of(a, j, bank));
    db.push_back(block_of(b, j, bank));
  }
  SpectralField zero_a(a.grid(), a.parity()), zero_b(b.grid(), b.parity());
  SpectralField out(refined_vertically(a.grid()), parity);
  SpectralField sa = zero_a, sb = zero_b;  // S_{j-1}: blocks below j - 1
  for (int j = 0; j < nb; ++j) {
    if (j >= 2) {
      sa += da[j - 2];
      sb += db[j - 2];
    }
    out += padded_product(sa, db[j], parity, true);  // T_a b
    out += padded_product(da[j], sb, parity, true);  // T_b a
    SpectralField near = db[j];
    if (j > 0) near += db[j - 1];
    if (j + 1 < nb) near += db[j + 1];
    out += padded_product(da[j], near, parity, true);  // remainder
  }
  return out;
}

/// sum_q 2^{2qs} int |sum_k phi_q^2 e^{2r xi} e^{2Rt} pair_k| dt, catch-all block with weight 1.
double block_pairing_integral(const std::vector<double>& t, const std::vector<double>& radius,
                              const std::vector<std::vector<double>>& pairs, double R, double s,
                              const DyadicFilterBank& bank) {
  const StripGrid& g = bank.grid();
  const int lo = bank.q_min() - 1;
  double total = 0.0;
  for (int q = lo; q <= bank.q_max(); ++q) {
    std::vector<double> f(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      double acc = 0.0;
      for (int k = 0; k < g.modes_x(); ++k) {
        const double ph = q == lo ? (k == 0 ? 1.0 : 0.0) : bank.phi(q, k);
        if (ph == 0.0 || pairs[i][k] == 0.0) continue;
        acc += ph * ph * std::exp(2.0 * radius[i] * g.wavenumber(k)) * pairs[i][k];
      }
      f[i] = std::exp(2.0 * R * t[i]) * std::abs(acc);
    }
    double integral = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) integral += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    total += (q == lo ? 1.0 : std::pow(2.0, 2.0 * q * s)) * integral;
  }
  return total;
}

}  // namespace

LemmaTerms lemma_terms(LemmaKind kind, const LemmaSample& sample, double s,
                       const DyadicFilterBank& bank, bool bony) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("lemma_terms: s must lie in (0, 1]");
  const std::size_t n = sample.times.size();
  if (n < 2 || sample.u.size() != n || sample.w.size() != n)
    throw std::invalid_argument("lemma_terms: sample histories differ in length");
  if (!(sample.u.front().grid() == bank.grid()))
    throw std::invalid_argument("lemma_terms: sample grid does not match the bank");
  const StripGrid& g = bank.grid();
  const double eps = sample.eps;
  const bool vvv = kind == LemmaKind::vvv;

  // weight radius by forward Euler on the theta (tau) rate
  LemmaTerms out;
  std::vector<double> rate(n);
  double r = sample.a;
  for (std::size_t i = 0; i < n; ++i) {
    out.radius.push_back(r);
    const SpectralField uw = apply_weight(sample.u[i], r);
    rate[i] = vvv ? tau_rate(uw, v_from_u(uw), eps, bank) : theta_rate(uw, bank);
    if (i + 1 < n) r -= sample.lambda * (sample.times[i + 1] - sample.times[i]) * rate[i];
  }

  std::vector<std::vector<double>> pairs(n, std::vector<double>(g.modes_x(), 0.0));
  std::vector<Profile> rhs_profile(n);
  double u_sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const SpectralField& u = sample.u[i];
    const SpectralField& w = sample.w[i];
    SpectralField prod, test;
    switch (kind) {
      case LemmaKind::uww:
        prod = bilinear(u, ddx(w), Parity::cosine, bank, bony);
        test = w;
        rhs_profile[i] = profile(w);
        break;
      case LemmaKind::vww_u:
        prod = bilinear(v_from_u(u), ddy(u), Parity::cosine, bank, bony);
        test = u;
        rhs_profile[i] = profile(u);
        break;
      case LemmaKind::vww_T:
        prod = bilinear(v_from_u(u), ddy(w), Parity::cosine, bank, bony);
        test = w;
        rhs_profile[i] = profile(ddx(w));
        accumulate(rhs_profile[i], profile(ddy(w)));
        u_sup = std::max(u_sup, besov_norm_with_mean(apply_weight(u, out.radius[i]), 0.5, bank));
        break;
      case LemmaKind::vvv: {
        const SpectralField v = v_from_u(u);
        prod = bilinear(v, ddy(v), Parity::sine, bank, bony);
        test = v;
        rhs_profile[i] = profile(u);
        accumulate(rhs_profile[i], profile(v), eps);
        break;
      }
    }
    for (int k = 0; k < g.modes_x(); ++k) pairs[i][k] = mode_pairing(prod, test, k);
  }
  out.lhs = block_pairing_integral(sample.times, out.radius, pairs, sample.R, s, bank);
  if (vvv) out.lhs *= eps * eps;

  const std::vector<double> fac = growth(sample.times, sample.R);
  if (kind == LemmaKind::vww_T) {
    const double grad = chemin_lerner_norm(
        weighted_series("gradT", s, sample.times, rhs_profile, out.radius, fac, bank), 2.0);
    out.rhs = u_sup * grad * grad;
  } else {
    const double nrm = weighted_cl_norm(
        weighted_series("w", s + 0.5, sample.times, rhs_profile, out.radius, fac, bank), rate, 2.0);
    out.rhs = nrm * nrm;
  }
  return out;
}

CertificateReport lemma_ratio(LemmaKind kind, const LemmaSample& sample, double s,
                              const DyadicFilterBank& bank, double budget) {
  const LemmaTerms t = lemma_terms(kind, sample, s, bank, true);
  CertificateReport r;
  r.name = "lemma_" + to_string(kind);
  r.lhs = t.lhs;
  r.rhs = t.rhs;
  r.grid = bank.grid();
  r.eps = kind == LemmaKind::vvv ? sample.eps : 0.0;
  r.dt = sample.times.size() > 1 ? sample.times[1] - sample.times[0] : 0.0;
  r.budget = budget > 0.0 ? budget : inf;
  r.fitted_c = t.rhs > 0.0 ? t.lhs / t.rhs : 0.0;
  r.status = judge(t.lhs, t.rhs, r.budget);
  r.metadata = {{"s", s}, {"final_radius", t.radius.back()}};
  return r;
}

FittedConstants constants_from_c(double C, double a, std::optional<double> lambda) {
  FittedConstants k;
  k.C = std::max(1.0, C);
  k.lambda = lambda ? *lambda : 2.0 * k.C * k.C;
  k.threshold = std::min(1.0 / (2.0 * k.C * k.C), a / (2.0 * k.lambda)) / k.C;
  k.c0 = k.threshold / a;
  return k;
}

FittedConstants fit_constants(double a, int nx, int ny, int samples, std::uint64_t seed) {
  const StripGrid g = make_grid(nx, ny);
  const DyadicFilterBank bank = build_filter_bank(g);
  LemmaSampleSpec spec;
  spec.a = a;
  spec.bands = std::min(spec.bands, nx / 8);
  spec.vertical_modes = std::min(spec.vertical_modes, ny / 4);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const LemmaSample smp = make_lemma_sample(g, spec, seed + i);
    for (LemmaKind k : {LemmaKind::uww, LemmaKind::vww_u, LemmaKind::vww_T, LemmaKind::vvv})
      worst = std::max(worst, lemma_ratio(k, smp, 0.5, bank).fitted_c);
  }
  return constants_from_c(worst, a);
}

// --- convergence in eps --------------------------------------------------------------

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_fit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("loglog_fit: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("loglog_fit: abscissae coincide");
  const double slope = (n * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / n};
}

namespace {

struct Leg {
  double eps = 0.0;
  PEState state;
  bool alive = true;
  std::string status = "ok";
  std::vector<double> eta_rate;  // per step
  double eta = 0.0;
  std::vector<double> eta_at_sample;
  std::vector<Profile> err, err_dy;
  std::vector<Profile> u_theta;  // for M
  std::vector<double> tau_radius;
  std::vector<double> t_sample;
};

}  // namespace

SweepResult convergence_sweep(const SweepSetup& setup, const InitialData& data,
                              const DyadicFilterBank& bank) {
  setup.params.validate();
  if (setup.eps.empty()) throw std::invalid_argument("convergence_sweep: empty eps list");
  for (std::size_t i = 0; i < setup.eps.size(); ++i) {
    if (!(setup.eps[i] > 0.0 && setup.eps[i] <= 1.0))
      throw std::invalid_argument("convergence_sweep: eps must lie in (0, 1]");
    if (i > 0 && !(setup.eps[i] < setup.eps[i - 1]))
      throw std::invalid_argument("convergence_sweep: eps must be strictly decreasing");
  }
  if (!(data.u0.grid() == setup.grid) || !(data.T0.grid() == setup.grid) ||
      !(bank.grid() == setup.grid))
    throw std::invalid_argument("convergence_sweep: grids of data, bank and setup differ");
  if (setup.eta_limit_weight != "phi" && setup.eta_limit_weight != "eta")
    throw std::invalid_argument("convergence_sweep: eta_limit_weight must be phi or eta");

  const StepParams& p = setup.params;
  const bool eta_weight = setup.eta_limit_weight == "eta";
  const double mu_run = setup.mu_override ? *setup.mu_override : setup.lambda;

  LimitState lim = make_limit_state(data.u0, data.T0, p,
                                    BandState(setup.a, setup.lambda, BandKind::theta));
  std::vector<Leg> legs;
  for (double e : setup.eps) {
    Leg leg;
    leg.eps = e;
    leg.state = make_pe_state(data.u0, data.T0, e, p, BandState(setup.a, setup.lambda, BandKind::tau));
    legs.push_back(std::move(leg));
  }

  const long total = std::lround(setup.horizon / p.dt);
  const long stride = sample_stride(p.dt, setup.sample_every);
  std::vector<double> t_lim, r_lim;
  std::vector<Profile> m_u, m_dy, m_dt;
  bool limit_alive = true;

  auto record = [&] {
    if (limit_alive) {
      const double r = lim.theta->radius();
      t_lim.push_back(lim.t);
      r_lim.push_back(r);
      m_u.push_back(profile(lim.u));
      m_dy.push_back(profile(ddy(lim.u)));
      m_dt.push_back(profile(rhs_limit(lim, p).du()));
    }
    for (auto& leg : legs) {
      if (!leg.alive || !limit_alive) continue;
      const double e = leg.eps;
      Profile a = profile(leg.state.u - lim.u);
      accumulate(a, profile(leg.state.v - lim.v), e);
      Profile d = profile(ddy(leg.state.u - lim.u));
      accumulate(d, profile(ddy(leg.state.v - lim.v)), e);
      leg.err.push_back(std::move(a));
      leg.err_dy.push_back(std::move(d));
      leg.u_theta.push_back(profile(leg.state.u));
      leg.tau_radius.push_back(leg.state.tau->radius());
      leg.t_sample.push_back(leg.state.t);
      leg.eta_at_sample.push_back(leg.eta);
    }
  };

  record();
  for (long n = 0; n < total && limit_alive; ++n) {
    const double r_theta = lim.theta->radius();
    for (auto& leg : legs) {
      if (!leg.alive) continue;
      const double r_limit = eta_weight ? setup.a - mu_run * leg.eta : r_theta;
      const SpectralField w = apply_weight(leg.state.u, leg.state.tau->radius());
      const double rate = besov_norm_pair(ddy(w), leg.eps * ddx(w), 0.5, bank) +
                          theta_rate(apply_weight(lim.u, r_limit), bank);
      leg.eta_rate.push_back(rate);
      leg.eta += p.dt * rate;
    }
    try {
      step_limit(lim, p, bank);
    } catch (const band_exhausted&) {
      limit_alive = false;
      for (auto& leg : legs) leg.status = "band-exhausted";
      break;
    }
    for (auto& leg : legs) {
      if (!leg.alive) continue;
      try {
        step_pe(leg.state, p, bank);
      } catch (const band_exhausted&) {
        leg.alive = false;
        leg.status = "band-exhausted";
      }
    }
    if (lim.steps % stride == 0 || n + 1 == total) record();
  }

  // M and mu
  const std::vector<double> g_lim = growth(t_lim, 0.0);
  auto lim_norm = [&](const std::vector<Profile>& pr, double s, double pexp) {
    return chemin_lerner_norm(weighted_series("m", s, t_lim, pr, r_lim, g_lim, bank), pexp);
  };
  const double m_limit = lim_norm(m_u, 0.5, p_inf) + lim_norm(m_u, 2.5, p_inf) +
                         lim_norm(m_dy, 0.5, 2.0) + lim_norm(m_dy, 2.5, 2.0) +
                         lim_norm(m_dt, 1.5, 2.0);
  double M = 1.0;
  for (auto& leg : legs) {
    if (leg.t_sample.empty()) continue;
    const double m_pe = chemin_lerner_norm(
        weighted_series("m", 0.5, leg.t_sample, leg.u_theta, leg.tau_radius,
                        growth(leg.t_sample, 0.0), bank),
        p_inf);
    M = std::max(M, m_pe + m_limit);
  }
  const double mu = setup.mu_override ? *setup.mu_override
                    : eta_weight     ? mu_run
                                     : std::max(setup.lambda, setup.C * M);

  SweepResult res;
  for (auto& leg : legs) {
    SweepLeg out;
    out.eps = leg.eps;
    out.M = M;
    out.mu = mu;
    out.eta_final = leg.eta;
    out.status = leg.status;
    if (!leg.t_sample.empty()) {
      std::vector<double> radius(leg.t_sample.size());
      for (std::size_t i = 0; i < radius.size(); ++i)
        radius[i] = setup.a - mu * leg.eta_at_sample[i];
      const std::vector<double> one(radius.size(), 1.0);
      const NormSeries e = weighted_series("w", 0.5, leg.t_sample, leg.err, radius, one, bank);
      const NormSeries e32 = weighted_series("w", 1.5, leg.t_sample, leg.err, radius, one, bank);
      const NormSeries d = weighted_series("dyw", 0.5, leg.t_sample, leg.err_dy, radius, one, bank);
      out.error_sup = chemin_lerner_norm(e, p_inf);
      out.error_dy = chemin_lerner_norm(d, 2.0);
      out.error_eps32 = leg.eps * chemin_lerner_norm(e32, 2.0);
      const NormSeries first =
          weighted_series("w0", 0.5, {0.0}, {leg.err.front()}, {setup.a}, {1.0}, bank);
      out.initial_discrepancy = chemin_lerner_norm(first, p_inf);
    }
    // 0 <= (a - mu eta) <= min(theta, tau radii) along the run
    BandState eta(setup.a, mu, BandKind::eta);
    for (double r : leg.eta_rate) eta = eta.advanced(r, p.dt);
    const auto& th = lim.theta->history;
    const auto& ta = leg.state.tau->history;
    const std::size_t common = std::min({th.size(), ta.size(), eta.history.size()});
    for (std::size_t i = 0; i < common; ++i) {
      const double re = eta.history[i].radius;
      if (re < 0.0 || re > std::min(th[i].radius, ta[i].radius) + 1e-14) {
        out.ordering_holds = false;
        break;
      }
    }
    res.legs.push_back(out);
  }

  std::vector<double> xs, ys;
  for (const auto& l : res.legs)
    if (l.error_total() > 0.0 && l.status == "ok") {
      xs.push_back(l.eps);
      ys.push_back(l.error_total());
    }
  if (xs.size() >= 2) {
    const auto [slope, intercept] = loglog_fit(xs, ys);
    res.slope = slope;
    res.intercept = intercept;
  }
  return res;
}

// --- smallness -----------------------------------------------------------------

SmallnessReport smallness_check(const InitialData& data, double a, double c0,
                                const FittedConstants& k, const DyadicFilterBank& bank) {
  SmallnessReport r;
  r.value = data_size(data.u0, data.T0, a, bank);
  r.budget = c0 * a;
  r.threshold = std::min(1.0 / (2.0 * k.C * k.C), a / (2.0 * k.lambda)) / k.C;
  r.margin = r.budget - r.value;
  r.threshold_margin = r.threshold - r.value;
  r.boundary = std::abs(r.margin) <= 1e-9 * std::max(r.budget, r.value);
  r.pass = r.margin >= 0.0 || r.boundary;
  return r;
}

// --- CSV ---------------------------------------------------------------------------

void write_certificates_csv(std::ostream& os, const std::vector<CertificateReport>& reports,
                            const std::vector<std::string>& header) {
  for (const auto& h : header) os << "# " << h << '\n';
  os << "name,lhs,rhs,fitted_C,status,grid,eps,dt,budget\n";
  os.precision(17);
  for (const auto& r : reports)
    os << r.name << ',' << r.lhs << ',' << r.rhs << ',' << r.fitted_c << ','
       << to_string(r.status) << ',' << r.grid.nx << 'x' << r.grid.ny << ',' << r.eps << ','
       << r.dt << ',' << r.budget << '\n';
}

void write_sweep_csv(std::ostream& os, const SweepResult& r,
                     const std::vector<std::string>& header) {
  for (const auto& h : header) os << "# " << h << '\n';
  os << "eps,error_total,error_sup,error_dy,error_eps32,slope,intercept,initial_discrepancy,M,mu,"
        "status\n";
  os.precision(17);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& l : r.legs)
    os << l.eps << ',' << l.error_total() << ',' << l.error_sup << ',' << l.error_dy << ','
       << l.error_eps32 << ',' << r.slope.value_or(nan) << ',' << r.intercept.value_or(nan) << ','
       << l.initial_discrepancy << ',' << l.M << ',' << l.mu << ',' << l.status << '\n';
}

}  // namespace hpe
