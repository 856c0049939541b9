#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace hpe {

/// Periodic-in-x unit strip [0, Lx) x (0, 1).
///
/// Horizontal modes are stored as a half spectrum k = 0..Nx/2 (the field is
/// real, negative modes are conjugates). The Nyquist mode k = Nx/2 is kept at
/// zero by every operation. Vertical data has Ny + 1 slots: sine coefficients
/// m = 1..Ny-1, cosine coefficients m = 0..Ny, or collocation values at
/// y_j = j/Ny.
struct StripGrid {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;

  [[nodiscard]] int modes_x() const { return nx / 2 + 1; }
  [[nodiscard]] int rows_y() const { return ny + 1; }
  [[nodiscard]] double wavenumber(int k) const {
    return 2.0 * std::numbers::pi * k / lx;
  }
  [[nodiscard]] double max_wavenumber() const { return wavenumber(nx / 2); }
  /// Largest mode kept by the 2/3 truncation.
  [[nodiscard]] int dealias_cutoff() const { return (nx - 1) / 3; }

  void validate() const;

  friend bool operator==(const StripGrid&, const StripGrid&) = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void StripGrid::validate() const {
  if (!is_power_of_two(nx) || nx < 8)
    throw std::invalid_argument("StripGrid: Nx must be a power of two >= 8, got " +
                                std::to_string(nx));
  if (!is_power_of_two(ny) || ny < 8)
    throw std::invalid_argument("StripGrid: Ny must be a power of two >= 8, got " +
                                std::to_string(ny));
  if (!(lx > 0.0))
    throw std::invalid_argument("StripGrid: Lx must be positive");
}

inline StripGrid make_grid(int nx, int ny, double lx = 2.0 * std::numbers::pi) {
  StripGrid g{nx, ny, lx};
  g.validate();
  return g;
}

}  // namespace hpe
