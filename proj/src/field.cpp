#include "hpe/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace hpe {

namespace {

enum class PlanKind { rodft00, redft00, r2c, c2r };

// FFTW planning is not thread safe; execution through the new-array
// interface is. Plans are created once per (kind, size) and never freed.
class PlanCache {
 public:
  fftw_plan get(PlanKind kind, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(static_cast<int>(kind), n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_plan plan = nullptr;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    switch (kind) {
      case PlanKind::rodft00:
      case PlanKind::redft00: {
        double* in = fftw_alloc_real(n);
        double* out = fftw_alloc_real(n);
        plan = fftw_plan_r2r_1d(n, in, out,
                                kind == PlanKind::rodft00 ? FFTW_RODFT00 : FFTW_REDFT00,
                                flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case PlanKind::r2c: {
        double* in = fftw_alloc_real(n);
        fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
        plan = fftw_plan_dft_r2c_1d(n, in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case PlanKind::c2r: {
        fftw_complex* in = fftw_alloc_complex(n / 2 + 1);
        double* out = fftw_alloc_real(n);
        plan = fftw_plan_dft_c2r_1d(n, in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
    }
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed for n=" + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

double mode_weight(int k) { return k == 0 ? 1.0 : 2.0; }

}  // namespace

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::sine: return "dirichlet-sine";
    case Parity::cosine: return "neumann-cosine";
    case Parity::collocation: return "collocation";
  }
  return "?";
}

Parity parity_from_string(std::string_view s) {
  if (s == "dirichlet-sine" || s == "sine") return Parity::sine;
  if (s == "neumann-cosine" || s == "cosine") return Parity::cosine;
  if (s == "collocation") return Parity::collocation;
  throw std::invalid_argument("unknown parity '" + std::string(s) + "'");
}

// --- SpectralField ---------------------------------------------------------

SpectralField::SpectralField(const StripGrid& grid, Parity parity)
    : grid_(grid), parity_(parity),
      data_(static_cast<std::size_t>(grid.modes_x()) * grid.rows_y(), cplx{}) {}

void SpectralField::check_compatible(const SpectralField& o) const {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  if (parity_ != o.parity_) throw std::invalid_argument("SpectralField: parity mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

bool SpectralField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

void SpectralField::clean() {
  for (auto& c : mode(grid_.nx / 2)) c = 0.0;
  if (parity_ == Parity::sine) {
    for (int k = 0; k < grid_.modes_x(); ++k) {
      (*this)(k, 0) = 0.0;
      (*this)(k, grid_.ny) = 0.0;
    }
  }
  // k = 0 column of a real field is real.
  for (auto& c : mode(0)) c.imag(0.0);
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

// --- vertical transforms ---------------------------------------------------

namespace vt {

void sine_to_nodes(int n, std::span<const double> coeff, std::span<double> nodes) {
  std::fill(nodes.begin(), nodes.begin() + n + 1, 0.0);
  if (n < 2) return;
  const int len = n - 1;
  std::vector<double> in(len, 0.0), out(len);
  const int avail = std::min<int>(len, static_cast<int>(coeff.size()) - 1);
  for (int m = 1; m <= avail; ++m) in[m - 1] = coeff[m];
  fftw_execute_r2r(plans().get(PlanKind::rodft00, len), in.data(), out.data());
  for (int j = 1; j < n; ++j) nodes[j] = 0.5 * out[j - 1];
}

void nodes_to_sine(int n, std::span<const double> nodes, std::span<double> coeff) {
  std::fill(coeff.begin(), coeff.end(), 0.0);
  if (n < 2) return;
  const int len = n - 1;
  std::vector<double> in(nodes.begin() + 1, nodes.begin() + n), out(len);
  fftw_execute_r2r(plans().get(PlanKind::rodft00, len), in.data(), out.data());
  const int last = std::min<int>(n - 1, static_cast<int>(coeff.size()) - 1);
  for (int m = 1; m <= last; ++m) coeff[m] = out[m - 1] / n;
}

void cosine_to_nodes(int n, std::span<const double> coeff, std::span<double> nodes) {
  std::vector<double> in(n + 1, 0.0), out(n + 1);
  const int avail = std::min<int>(n, static_cast<int>(coeff.size()) - 1);
  for (int m = 0; m <= avail; ++m) in[m] = coeff[m];
  in[0] *= 2.0;
  in[n] *= 2.0;
  fftw_execute_r2r(plans().get(PlanKind::redft00, n + 1), in.data(), out.data());
  for (int j = 0; j <= n; ++j) nodes[j] = 0.5 * out[j];
}

void nodes_to_cosine(int n, std::span<const double> nodes, std::span<double> coeff) {
  std::fill(coeff.begin(), coeff.end(), 0.0);
  std::vector<double> in(nodes.begin(), nodes.begin() + n + 1), out(n + 1);
  fftw_execute_r2r(plans().get(PlanKind::redft00, n + 1), in.data(), out.data());
  const int last = std::min<int>(n, static_cast<int>(coeff.size()) - 1);
  for (int m = 0; m <= last; ++m) coeff[m] = out[m] / ((m == 0 || m == n) ? 2.0 * n : n);
}

}  // namespace vt

namespace ht {

void forward(int nx, std::span<const double> values, std::span<cplx> spectrum) {
  std::vector<double> in(values.begin(), values.begin() + nx);
  fftw_execute_dft_r2c(plans().get(PlanKind::r2c, nx), in.data(),
                       reinterpret_cast<fftw_complex*>(spectrum.data()));
  const double inv = 1.0 / nx;
  for (int k = 0; k <= nx / 2; ++k) spectrum[k] *= inv;
}

void inverse(int nx, std::span<const cplx> spectrum, std::span<double> values) {
  std::vector<cplx> in(spectrum.begin(), spectrum.begin() + nx / 2 + 1);
  fftw_execute_dft_c2r(plans().get(PlanKind::c2r, nx), reinterpret_cast<fftw_complex*>(in.data()),
                       values.data());
}

}  // namespace ht

// --- evaluation -------------------------------------------------------------

std::vector<cplx> mode_nodes(const SpectralField& f, int k, int ny_eval) {
  const StripGrid& g = f.grid();
  if (ny_eval <= 0) ny_eval = g.ny;
  std::vector<cplx> out(ny_eval + 1);
  auto slice = f.mode(k);
  if (f.parity() == Parity::collocation) {
    if (ny_eval != g.ny)
      throw std::invalid_argument("mode_nodes: collocation field cannot be resampled");
    std::copy(slice.begin(), slice.end(), out.begin());
    return out;
  }
  std::vector<double> re(g.rows_y()), im(g.rows_y()), nre(ny_eval + 1), nim(ny_eval + 1);
  bool any_imag = false;
  for (int m = 0; m < g.rows_y(); ++m) {
    re[m] = slice[m].real();
    im[m] = slice[m].imag();
    any_imag = any_imag || im[m] != 0.0;
  }
  if (f.parity() == Parity::sine) {
    vt::sine_to_nodes(ny_eval, re, nre);
    if (any_imag) vt::sine_to_nodes(ny_eval, im, nim);
  } else {
    vt::cosine_to_nodes(ny_eval, re, nre);
    if (any_imag) vt::cosine_to_nodes(ny_eval, im, nim);
  }
  for (int j = 0; j <= ny_eval; ++j) out[j] = {nre[j], any_imag ? nim[j] : 0.0};
  return out;
}

PhysicalField to_physical(const SpectralField& f, int ny_eval, bool dealias) {
  const StripGrid& g = f.grid();
  if (ny_eval <= 0) ny_eval = g.ny;
  const int kx = g.modes_x();
  const int kcut = dealias ? g.dealias_cutoff() : g.nx / 2 - 1;
  std::vector<cplx> nodes(static_cast<std::size_t>(kx) * (ny_eval + 1), cplx{});
  for (int k = 0; k <= kcut; ++k) {
    auto col = mode_nodes(f, k, ny_eval);
    std::copy(col.begin(), col.end(), nodes.begin() + static_cast<std::size_t>(k) * (ny_eval + 1));
  }
  PhysicalField out(g.nx, ny_eval);
  std::vector<cplx> row(kx);
  std::vector<double> vals(g.nx);
  for (int j = 0; j <= ny_eval; ++j) {
    for (int k = 0; k < kx; ++k) row[k] = nodes[static_cast<std::size_t>(k) * (ny_eval + 1) + j];
    row[0].imag(0.0);
    ht::inverse(g.nx, row, vals);
    std::copy(vals.begin(), vals.end(), out.values.begin() + static_cast<std::size_t>(j) * g.nx);
  }
  return out;
}

SpectralField from_physical(const PhysicalField& values, const StripGrid& grid, Parity parity,
                            bool dealias) {
  const int n = values.ny_eval;
  if (values.nx != grid.nx) throw std::invalid_argument("from_physical: Nx mismatch");
  if (n < grid.ny || n % grid.ny != 0)
    throw std::invalid_argument("from_physical: vertical node count must be a multiple of Ny");
  const int kx = grid.modes_x();
  std::vector<cplx> spec(static_cast<std::size_t>(kx) * (n + 1));
  std::vector<cplx> row(kx);
  for (int j = 0; j <= n; ++j) {
    ht::forward(grid.nx,
                std::span<const double>(values.values.data() + static_cast<std::size_t>(j) * grid.nx,
                                        grid.nx),
                row);
    for (int k = 0; k < kx; ++k) spec[static_cast<std::size_t>(k) * (n + 1) + j] = row[k];
  }
  SpectralField out(grid, parity);
  const int kcut = dealias ? grid.dealias_cutoff() : grid.nx / 2 - 1;
  std::vector<double> re(n + 1), im(n + 1), cre(grid.rows_y()), cim(grid.rows_y());
  for (int k = 0; k <= kcut; ++k) {
    auto slice = out.mode(k);
    const cplx* col = spec.data() + static_cast<std::size_t>(k) * (n + 1);
    if (parity == Parity::collocation) {
      const int stride = n / grid.ny;
      for (int j = 0; j <= grid.ny; ++j) slice[j] = col[j * stride];
      continue;
    }
    for (int j = 0; j <= n; ++j) {
      re[j] = col[j].real();
      im[j] = col[j].imag();
    }
    if (parity == Parity::sine) {
      vt::nodes_to_sine(n, re, cre);
      vt::nodes_to_sine(n, im, cim);
    } else {
      vt::nodes_to_cosine(n, re, cre);
      vt::nodes_to_cosine(n, im, cim);
    }
    for (int m = 0; m < grid.rows_y(); ++m) slice[m] = {cre[m], cim[m]};
  }
  out.clean();
  return out;
}

SpectralField to_collocation(const SpectralField& f) {
  if (f.parity() == Parity::collocation) return f;
  SpectralField out(f.grid(), Parity::collocation);
  for (int k = 0; k < f.grid().modes_x() - 1; ++k) {
    auto col = mode_nodes(f, k, f.grid().ny);
    std::copy(col.begin(), col.end(), out.mode(k).begin());
  }
  return out;
}

SpectralField from_collocation(const SpectralField& f, Parity parity) {
  if (f.parity() != Parity::collocation)
    throw std::invalid_argument("from_collocation: input must be a collocation field");
  if (parity == Parity::collocation) return f;
  const StripGrid& g = f.grid();
  SpectralField out(g, parity);
  std::vector<double> re(g.rows_y()), im(g.rows_y()), cre(g.rows_y()), cim(g.rows_y());
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    auto src = f.mode(k);
    for (int j = 0; j < g.rows_y(); ++j) {
      re[j] = src[j].real();
      im[j] = src[j].imag();
    }
    if (parity == Parity::sine) {
      vt::nodes_to_sine(g.ny, re, cre);
      vt::nodes_to_sine(g.ny, im, cim);
    } else {
      vt::nodes_to_cosine(g.ny, re, cre);
      vt::nodes_to_cosine(g.ny, im, cim);
    }
    auto dst = out.mode(k);
    for (int m = 0; m < g.rows_y(); ++m) dst[m] = {cre[m], cim[m]};
  }
  out.clean();
  return out;
}

SpectralField ddx(const SpectralField& f) {
  SpectralField out = f;
  for (int k = 0; k < f.grid().modes_x(); ++k) {
    const cplx ik{0.0, f.grid().wavenumber(k)};
    for (auto& c : out.mode(k)) c *= ik;
  }
  out.clean();
  return out;
}

SpectralField ddy(const SpectralField& f) {
  const StripGrid& g = f.grid();
  if (f.parity() == Parity::collocation)
    throw std::invalid_argument("ddy: collocation fields have no exact vertical derivative");
  const double pi = std::numbers::pi;
  SpectralField out(g, f.parity() == Parity::sine ? Parity::cosine : Parity::sine);
  for (int k = 0; k < g.modes_x(); ++k) {
    auto src = f.mode(k);
    auto dst = out.mode(k);
    for (int m = 1; m < g.ny; ++m)
      dst[m] = (f.parity() == Parity::sine ? m * pi : -m * pi) * src[m];
  }
  out.clean();
  return out;
}

// --- norms ------------------------------------------------------------------

double vertical_l2_sq(const SpectralField& f, int k) {
  auto s = f.mode(k);
  const int ny = f.grid().ny;
  double acc = 0.0;
  switch (f.parity()) {
    case Parity::sine:
      for (int m = 1; m < ny; ++m) acc += 0.5 * std::norm(s[m]);
      break;
    case Parity::cosine:
      acc = std::norm(s[0]);
      for (int m = 1; m <= ny; ++m) acc += 0.5 * std::norm(s[m]);
      break;
    case Parity::collocation: {
      const double h = 1.0 / ny;
      for (int j = 0; j <= ny; ++j) acc += ((j == 0 || j == ny) ? 0.5 : 1.0) * h * std::norm(s[j]);
      break;
    }
  }
  return acc;
}

double l2_norm_sq(const SpectralField& f, std::span<const double> weight) {
  const StripGrid& g = f.grid();
  double acc = 0.0;
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    const double w = weight.empty() ? 1.0 : weight[k];
    if (w == 0.0) continue;
    acc += mode_weight(k) * w * w * vertical_l2_sq(f, k);
  }
  return g.lx * acc;
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

double inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  if (a.parity() != b.parity()) return inner_product(to_collocation(a), to_collocation(b));
  const StripGrid& g = a.grid();
  const int ny = g.ny;
  double acc = 0.0;
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    auto sa = a.mode(k);
    auto sb = b.mode(k);
    double mk = 0.0;
    switch (a.parity()) {
      case Parity::sine:
        for (int m = 1; m < ny; ++m) mk += 0.5 * (sa[m] * std::conj(sb[m])).real();
        break;
      case Parity::cosine:
        mk = (sa[0] * std::conj(sb[0])).real();
        for (int m = 1; m <= ny; ++m) mk += 0.5 * (sa[m] * std::conj(sb[m])).real();
        break;
      case Parity::collocation: {
        const double h = 1.0 / ny;
        for (int j = 0; j <= ny; ++j)
          mk += ((j == 0 || j == ny) ? 0.5 : 1.0) * h * (sa[j] * std::conj(sb[j])).real();
        break;
      }
    }
    acc += mode_weight(k) * mk;
  }
  return g.lx * acc;
}

SpectralField product(const SpectralField& a, const SpectralField& b, bool dealias) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("product: grid mismatch");
  PhysicalField pa = to_physical(a, a.grid().ny, dealias);
  PhysicalField pb = to_physical(b, b.grid().ny, dealias);
  for (std::size_t i = 0; i < pa.values.size(); ++i) pa.values[i] *= pb.values[i];
  return from_physical(pa, a.grid(), Parity::collocation, dealias);
}

StripGrid refined_vertically(const StripGrid& g, int factor) {
  return StripGrid{g.nx, g.ny * factor, g.lx};
}

SpectralField resize_vertical(const SpectralField& f, const StripGrid& target) {
  const StripGrid& g = f.grid();
  if (g.nx != target.nx || g.lx != target.lx)
    throw std::invalid_argument("resize_vertical: horizontal grids differ");
  if (f.parity() == Parity::collocation)
    throw std::invalid_argument("resize_vertical: collocation fields cannot be resized");
  SpectralField out(target, f.parity());
  const int rows = std::min(g.rows_y(), target.rows_y());
  for (int k = 0; k < g.modes_x(); ++k)
    for (int m = 0; m < rows; ++m) out(k, m) = f(k, m);
  out.clean();
  return out;
}

SpectralField padded_product(const SpectralField& a, const SpectralField& b, Parity parity,
                             bool dealias) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("padded_product: grid mismatch");
  const StripGrid fine = refined_vertically(a.grid());
  PhysicalField pa = to_physical(a, fine.ny, dealias);
  PhysicalField pb = to_physical(b, fine.ny, dealias);
  for (std::size_t i = 0; i < pa.values.size(); ++i) pa.values[i] *= pb.values[i];
  return from_physical(pa, fine, parity, dealias);
}

std::vector<double> column_integral(const SpectralField& f) {
  const StripGrid& g = f.grid();
  const double pi = std::numbers::pi;
  std::vector<cplx> spec(g.modes_x(), cplx{});
  for (int k = 0; k < g.modes_x() - 1; ++k) {
    auto s = f.mode(k);
    cplx acc{};
    switch (f.parity()) {
      case Parity::sine:
        for (int m = 1; m < g.ny; m += 2) acc += s[m] * (2.0 / (m * pi));
        break;
      case Parity::cosine:
        acc = s[0];
        break;
      case Parity::collocation: {
        const double h = 1.0 / g.ny;
        for (int j = 0; j <= g.ny; ++j) acc += ((j == 0 || j == g.ny) ? 0.5 : 1.0) * h * s[j];
        break;
      }
    }
    spec[k] = acc;
  }
  spec[0].imag(0.0);
  std::vector<double> out(g.nx);
  ht::inverse(g.nx, spec, out);
  return out;
}

std::vector<cplx> wall_trace(const SpectralField& f, int wall) {
  const StripGrid& g = f.grid();
  std::vector<cplx> out(g.modes_x(), cplx{});
  for (int k = 0; k < g.modes_x(); ++k) {
    auto s = f.mode(k);
    switch (f.parity()) {
      case Parity::sine:
        break;
      case Parity::cosine:
        for (int m = 0; m <= g.ny; ++m) out[k] += (wall == 0 || m % 2 == 0) ? s[m] : -s[m];
        break;
      case Parity::collocation:
        out[k] = wall == 0 ? s[0] : s[g.ny];
        break;
    }
  }
  return out;
}

}  // namespace hpe
