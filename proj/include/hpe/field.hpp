#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "hpe/grid.hpp"

namespace hpe {

using cplx = std::complex<double>;

/// Vertical representation of a field.
///   sine        f(y) = sum_{m=1}^{Ny-1} a_m sin(m pi y)      (Dirichlet)
///   cosine      f(y) = sum_{m=0}^{Ny}   c_m cos(m pi y)      (Neumann / derived)
///   collocation f(y_j) at y_j = j/Ny, j = 0..Ny              (trapezoid in y)
enum class Parity { sine, cosine, collocation };

std::string_view to_string(Parity p);
Parity parity_from_string(std::string_view s);

/// Real scalar field on the strip, stored as horizontal Fourier coefficients
/// (half spectrum) times a vertical representation. Layout is k-major: the
/// vertical slice of mode k is contiguous.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const StripGrid& grid, Parity parity);

  [[nodiscard]] const StripGrid& grid() const { return grid_; }
  [[nodiscard]] Parity parity() const { return parity_; }

  cplx& operator()(int k, int m) { return data_[index(k, m)]; }
  const cplx& operator()(int k, int m) const { return data_[index(k, m)]; }

  std::span<cplx> mode(int k) {
    return {data_.data() + static_cast<std::size_t>(k) * grid_.rows_y(),
            static_cast<std::size_t>(grid_.rows_y())};
  }
  [[nodiscard]] std::span<const cplx> mode(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * grid_.rows_y(),
            static_cast<std::size_t>(grid_.rows_y())};
  }

  std::vector<cplx>& data() { return data_; }
  [[nodiscard]] const std::vector<cplx>& data() const { return data_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  [[nodiscard]] bool all_finite() const;
  /// Zero the Nyquist mode and the unused sine slots (m = 0, m = Ny).
  void clean();

 private:
  [[nodiscard]] std::size_t index(int k, int m) const {
    return static_cast<std::size_t>(k) * grid_.rows_y() + m;
  }
  void check_compatible(const SpectralField& o) const;

  StripGrid grid_{};
  Parity parity_ = Parity::sine;
  std::vector<cplx> data_;
};

/// Real values on the physical grid: rows y_j = j/ny_eval (j = 0..ny_eval),
/// columns x_i = i Lx / Nx.
struct PhysicalField {
  int nx = 0;
  int ny_eval = 0;
  std::vector<double> values;

  PhysicalField() = default;
  PhysicalField(int nx_, int ny_eval_)
      : nx(nx_), ny_eval(ny_eval_),
        values(static_cast<std::size_t>(nx_) * (ny_eval_ + 1), 0.0) {}

  double& operator()(int j, int i) { return values[static_cast<std::size_t>(j) * nx + i]; }
  double operator()(int j, int i) const { return values[static_cast<std::size_t>(j) * nx + i]; }
  [[nodiscard]] double max_abs() const;
};

// --- vertical transforms on one real coefficient line ---------------------
// `n` is the number of vertical intervals of the node set (y_j = j/n).
// Coefficient and node arrays both have length n + 1.
namespace vt {
void sine_to_nodes(int n, std::span<const double> coeff, std::span<double> nodes);
void nodes_to_sine(int n, std::span<const double> nodes, std::span<double> coeff);
void cosine_to_nodes(int n, std::span<const double> coeff, std::span<double> nodes);
void nodes_to_cosine(int n, std::span<const double> nodes, std::span<double> coeff);
}  // namespace vt

// --- horizontal transforms on one row --------------------------------------
namespace ht {
/// values (length nx) -> normalized half spectrum (length nx/2+1).
void forward(int nx, std::span<const double> values, std::span<cplx> spectrum);
/// normalized half spectrum -> values.
void inverse(int nx, std::span<const cplx> spectrum, std::span<double> values);
}  // namespace ht

/// Vertical profile of mode k evaluated at y_j = j/ny_eval (j = 0..ny_eval).
std::vector<cplx> mode_nodes(const SpectralField& f, int k, int ny_eval);

/// Evaluate on the physical grid with ny_eval vertical intervals (default Ny).
/// With `dealias`, modes above the 2/3 cutoff are dropped first.
PhysicalField to_physical(const SpectralField& f, int ny_eval = 0, bool dealias = false);

/// Project physical values to a field of the requested parity. `values` must
/// live on ny_eval = grid.ny or a multiple of it; the result keeps the lowest
/// Ny + 1 vertical coefficients (exact when the data is a trig polynomial of
/// degree <= ny_eval). Modes above the 2/3 cutoff are dropped with `dealias`.
SpectralField from_physical(const PhysicalField& values, const StripGrid& grid,
                            Parity parity, bool dealias = false);

/// Collocation representation (exact nodal values).
SpectralField to_collocation(const SpectralField& f);
/// Sine or cosine interpolant through the nodal values of a collocation field.
SpectralField from_collocation(const SpectralField& f, Parity parity);

SpectralField ddx(const SpectralField& f);
/// Exact vertical derivative: sine -> cosine, cosine -> sine.
SpectralField ddy(const SpectralField& f);

/// Integral over y of |f_k(y)|^2 for one horizontal mode.
double vertical_l2_sq(const SpectralField& f, int k);
/// Squared L^2 norm over [0,Lx) x (0,1), with per-mode multipliers `weight(k)`
/// applied to the coefficients (identity when empty).
double l2_norm_sq(const SpectralField& f, std::span<const double> weight = {});
double l2_norm(const SpectralField& f);
/// Real L^2 inner product over the strip. Mixed parities are paired through
/// their nodal values.
double inner_product(const SpectralField& a, const SpectralField& b);

/// Pointwise product at the nodes y_j; collocation result. `dealias` applies
/// the 2/3 rule to both inputs and the result.
SpectralField product(const SpectralField& a, const SpectralField& b, bool dealias = true);

/// Same grid with `factor` times the vertical intervals.
StripGrid refined_vertically(const StripGrid& g, int factor = 2);

/// Copy the vertical coefficients of `f` into a field on `target` (same Nx,
/// Lx); extra slots are zero, missing ones are dropped.
SpectralField resize_vertical(const SpectralField& f, const StripGrid& target);

/// Product evaluated on the 2x vertically refined node set and returned there
/// in the requested parity. For sine/cosine inputs the vertical coefficients
/// of the result are exact; `dealias` applies the 2/3 rule in x.
SpectralField padded_product(const SpectralField& a, const SpectralField& b, Parity parity,
                             bool dealias = true);

/// Horizontal mean (k = 0 column) of int_0^1 f dy as a function of x, sampled
/// on the x grid.
std::vector<double> column_integral(const SpectralField& f);

/// Value at y = 0 (wall = 0) or y = 1 (wall = 1) per horizontal mode.
std::vector<cplx> wall_trace(const SpectralField& f, int wall);

}  // namespace hpe
