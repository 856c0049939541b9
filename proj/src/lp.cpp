#include "hpe/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hpe {

namespace {

double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_h(t);
  return a / (a + smooth_h(1.0 - t));
}

std::vector<double> vertical_profile_norms(const SpectralField& f) {
  std::vector<double> v(f.grid().modes_x(), 0.0);
  for (int k = 0; k < f.grid().modes_x() - 1; ++k) v[k] = vertical_l2_sq(f, k);
  return v;
}

SpectralField apply_multiplier(const SpectralField& f, const std::vector<double>& mult) {
  SpectralField out = f;
  for (int k = 0; k < f.grid().modes_x(); ++k)
    for (auto& c : out.mode(k)) c *= mult[k];
  return out;
}

}  // namespace

double cutoff_psi(double z) {
  const double a = std::abs(z);
  return smooth_step((4.0 / 3.0 - a) / (4.0 / 3.0 - 0.75));
}

double cutoff_phi(double z) { return cutoff_psi(0.5 * z) - cutoff_psi(z); }

DyadicFilterBank::DyadicFilterBank(const StripGrid& grid, int q_min, int q_max)
    : grid_(grid), q_min_(q_min), q_max_(q_max) {
  if (q_max < q_min) throw std::invalid_argument("DyadicFilterBank: empty block range");
  const int kx = grid.modes_x();
  phi_.resize(static_cast<std::size_t>(block_count()) * kx);
  psi_.resize(phi_.size());
  for (int q = q_min; q <= q_max; ++q) {
    const double scale = std::ldexp(1.0, -q);
    for (int k = 0; k < kx; ++k) {
      const double z = scale * grid.wavenumber(k);
      phi_[static_cast<std::size_t>(q - q_min) * kx + k] = cutoff_phi(z);
      psi_[static_cast<std::size_t>(q - q_min) * kx + k] = cutoff_psi(z);
    }
  }
}

double DyadicFilterBank::phi(int q, int k) const {
  if (q < q_min_ || q > q_max_) return 0.0;
  return phi_[static_cast<std::size_t>(q - q_min_) * grid_.modes_x() + k];
}

double DyadicFilterBank::psi(int q, int k) const {
  if (q < q_min_ || q > q_max_) return cutoff_psi(std::ldexp(grid_.wavenumber(k), -q));
  return psi_[static_cast<std::size_t>(q - q_min_) * grid_.modes_x() + k];
}

bool DyadicFilterBank::in_annulus(int q, int k) const { return phi(q, k) == 1.0; }

std::vector<double> DyadicFilterBank::block_multiplier(int q) const {
  std::vector<double> m(grid_.modes_x());
  for (int k = 0; k < grid_.modes_x(); ++k) m[k] = phi(q, k);
  return m;
}

DyadicFilterBank build_filter_bank(const StripGrid& grid) {
  grid.validate();
  const double xi1 = grid.wavenumber(1);
  const int q_min = static_cast<int>(std::floor(std::log2(0.75 * xi1)));
  int q_max = q_min;
  // Telescoping leaves psi(2^{-q_max-1} xi), which is 1 once |xi| <= 1.5 * 2^q_max.
  while (1.5 * std::ldexp(1.0, q_max) < grid.max_wavenumber()) ++q_max;
  return {grid, q_min, q_max};
}

SpectralField dyadic_block(const SpectralField& f, int q, const DyadicFilterBank& bank) {
  if (q < bank.q_min() || q > bank.q_max()) return {f.grid(), f.parity()};
  return apply_multiplier(f, bank.block_multiplier(q));
}

SpectralField low_pass(const SpectralField& f, int q, const DyadicFilterBank& bank) {
  std::vector<double> m(f.grid().modes_x());
  for (int k = 0; k < f.grid().modes_x(); ++k) m[k] = bank.psi(q, k);
  return apply_multiplier(f, m);
}

SpectralField mean_mode(const SpectralField& f) {
  SpectralField out(f.grid(), f.parity());
  std::copy(f.mode(0).begin(), f.mode(0).end(), out.mode(0).begin());
  return out;
}

std::vector<double> block_norms(const SpectralField& f, const DyadicFilterBank& bank) {
  const auto prof = vertical_profile_norms(f);
  const StripGrid& g = f.grid();
  std::vector<double> out(bank.block_count(), 0.0);
  for (int q = bank.q_min(); q <= bank.q_max(); ++q) {
    double acc = 0.0;
    for (int k = 1; k < g.modes_x() - 1; ++k) {
      const double w = bank.phi(q, k);
      if (w != 0.0) acc += 2.0 * w * w * prof[k];
    }
    out[q - bank.q_min()] = std::sqrt(g.lx * acc);
  }
  return out;
}

double mean_norm(const SpectralField& f) {
  return std::sqrt(f.grid().lx * vertical_l2_sq(f, 0));
}

namespace {

void check_s(double s) {
  if (!(s >= besov_s_min && s <= besov_s_max))
    throw std::invalid_argument("besov_norm: s = " + std::to_string(s) + " outside [-2, 3]");
}

double weighted_block_sum(const std::vector<double>& blocks, int q_min, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    acc += std::pow(2.0, (q_min + static_cast<int>(i)) * s) * blocks[i];
  return acc;
}

}  // namespace

double besov_norm(const SpectralField& f, double s, const DyadicFilterBank& bank) {
  check_s(s);
  return weighted_block_sum(block_norms(f, bank), bank.q_min(), s);
}

double besov_norm_with_mean(const SpectralField& f, double s, const DyadicFilterBank& bank) {
  return besov_norm(f, s, bank) + mean_norm(f);
}

double besov_norm_pair(const SpectralField& f, const SpectralField& g, double s,
                       const DyadicFilterBank& bank, bool with_mean) {
  check_s(s);
  auto bf = block_norms(f, bank);
  const auto bg = block_norms(g, bank);
  for (std::size_t i = 0; i < bf.size(); ++i) bf[i] = std::hypot(bf[i], bg[i]);
  double out = weighted_block_sum(bf, bank.q_min(), s);
  if (with_mean) out += std::hypot(mean_norm(f), mean_norm(g));
  return out;
}

// --- NormSeries ---------------------------------------------------------------

void NormSeries::append(double t, std::vector<double> block_l2, double mean_l2) {
  if (!times.empty() && !(t > times.back()))
    throw std::invalid_argument("NormSeries: times must be strictly increasing");
  if (!blocks.empty() && block_l2.size() != blocks.front().size())
    throw std::invalid_argument("NormSeries: block set changed between samples");
  if (mean_l2 >= 0.0) {
    if (mean.size() != times.size())
      throw std::invalid_argument("NormSeries: mean history must cover every sample");
    mean.push_back(mean_l2);
  } else if (!mean.empty()) {
    throw std::invalid_argument("NormSeries: missing mean-mode sample");
  }
  times.push_back(t);
  blocks.push_back(std::move(block_l2));
}

void NormSeries::record(double t, const SpectralField& f, const DyadicFilterBank& bank,
                        bool with_mean) {
  if (blocks.empty()) q_min = bank.q_min();
  append(t, block_norms(f, bank), with_mean ? mean_norm(f) : -1.0);
}

NormSeries NormSeries::scaled(const std::vector<double>& factor) const {
  if (factor.size() != times.size())
    throw std::invalid_argument("NormSeries::scaled: factor length mismatch");
  NormSeries out = *this;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (double& b : out.blocks[i]) b *= factor[i];
    if (!out.mean.empty()) out.mean[i] *= factor[i];
  }
  return out;
}

void NormSeries::write_csv(std::ostream& os) const {
  os << "t,q,block_l2\n";
  os.precision(17);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!mean.empty()) os << times[i] << ',' << q_min - 1 << ',' << mean[i] << '\n';
    for (std::size_t j = 0; j < blocks[i].size(); ++j)
      os << times[i] << ',' << q_min + static_cast<int>(j) << ',' << blocks[i][j] << '\n';
  }
}

namespace {

double time_norm(const std::vector<double>& t, const std::vector<double>& v,
                 const std::vector<double>* w, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, (w ? (*w)[i] : 1.0) * v[i]);
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double f0 = (w ? (*w)[i - 1] : 1.0) * std::pow(v[i - 1], p);
    const double f1 = (w ? (*w)[i] : 1.0) * std::pow(v[i], p);
    acc += 0.5 * (t[i] - t[i - 1]) * (f0 + f1);
  }
  return std::pow(acc, 1.0 / p);
}

double cl_norm(const NormSeries& series, const std::vector<double>* w, double p) {
  if (series.empty()) throw std::invalid_argument("chemin_lerner_norm: empty series");
  if (!(p >= 1.0)) throw std::invalid_argument("chemin_lerner_norm: p must be >= 1");
  const std::size_t nb = series.blocks.front().size();
  for (const auto& row : series.blocks)
    if (row.size() != nb) throw std::invalid_argument("chemin_lerner_norm: mismatched block sets");
  std::vector<double> col(series.times.size());
  double total = 0.0;
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = series.blocks[i][j];
    total += std::pow(2.0, (series.q_min + static_cast<int>(j)) * series.s) *
             time_norm(series.times, col, w, p);
  }
  if (series.has_mean()) total += time_norm(series.times, series.mean, w, p);
  return total;
}

}  // namespace

double chemin_lerner_norm(const NormSeries& series, double p) {
  return cl_norm(series, nullptr, p);
}

double weighted_cl_norm(const NormSeries& series, const std::vector<double>& weight, double p) {
  if (weight.size() != series.times.size())
    throw std::invalid_argument("weighted_cl_norm: weight must be sampled at the series times");
  for (double w : weight)
    if (w < 0.0 || !std::isfinite(w))
      throw std::invalid_argument("weighted_cl_norm: weight must be nonnegative");
  return cl_norm(series, &weight, p);
}

// --- paraproducts -------------------------------------------------------------

BonySplit bony_split(const SpectralField& a, const SpectralField& b,
                     const DyadicFilterBank& bank) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("bony_split: grid mismatch");
  const StripGrid& g = a.grid();
  const int lo = bank.q_min() - 1;  // catch-all block
  const int nb = bank.q_max() - lo + 1;
  auto block = [&](const SpectralField& f, int j) {
    return j == lo ? low_pass(f, bank.q_min(), bank) : dyadic_block(f, j, bank);
  };
  std::vector<PhysicalField> da(nb), db(nb);
  for (int j = lo; j <= bank.q_max(); ++j) {
    da[j - lo] = to_physical(block(a, j), g.ny, true);
    db[j - lo] = to_physical(block(b, j), g.ny, true);
  }
  const std::size_t n = da[0].values.size();
  PhysicalField tab(g.nx, g.ny), tba(g.nx, g.ny), rest(g.nx, g.ny);
  std::vector<double> sa(n, 0.0), sb(n, 0.0);  // S_{q-1} = sum_{j <= q-2}
  for (int q = lo; q <= bank.q_max(); ++q) {
    const int i = q - lo;
    if (i >= 2) {
      for (std::size_t p = 0; p < n; ++p) {
        sa[p] += da[i - 2].values[p];
        sb[p] += db[i - 2].values[p];
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      tab.values[p] += sa[p] * db[i].values[p];
      tba.values[p] += sb[p] * da[i].values[p];
      double r = da[i].values[p] * db[i].values[p];
      if (i >= 1) r += da[i - 1].values[p] * db[i].values[p];
      if (i + 1 < nb) r += da[i + 1].values[p] * db[i].values[p];
      rest.values[p] += r;
    }
  }
  return {from_physical(tab, g, Parity::collocation, true),
          from_physical(tba, g, Parity::collocation, true),
          from_physical(rest, g, Parity::collocation, true)};
}

BernsteinReport bernstein_ratio(const SpectralField& f, int k, double lambda) {
  if (k < 0) throw std::invalid_argument("bernstein_ratio: derivative order must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("bernstein_ratio: lambda must be positive");
  const StripGrid& g = f.grid();
  BernsteinReport rep;
  double num = 0.0;
  double den = 0.0;
  const double tol = 1e-12;
  double total = 0.0;
  for (int j = 0; j < g.modes_x() - 1; ++j) total += vertical_l2_sq(f, j);
  for (int j = 0; j < g.modes_x() - 1; ++j) {
    const double e = vertical_l2_sq(f, j);
    if (e <= 1e-24 * total) continue;  // transform round-off
    const double xi = g.wavenumber(j);
    if (xi < ring_inner * lambda * (1 - tol) || xi > ring_outer * lambda * (1 + tol))
      throw std::invalid_argument("bernstein_ratio: field has mode " + std::to_string(j) +
                                  " outside the ring [3/4, 8/3] * lambda");
    const double w = j == 0 ? 1.0 : 2.0;
    num += w * std::pow(xi, 2 * k) * e;
    den += w * e;
  }
  if (den == 0.0) {
    rep.degenerate = true;
    return rep;
  }
  rep.ratio = std::sqrt(num / den) / std::pow(lambda, k);
  rep.within = rep.ratio >= std::pow(rep.bound, -k) * (1 - tol) &&
               rep.ratio <= std::pow(rep.bound, k) * (1 + tol);
  return rep;
}

}  // namespace hpe
