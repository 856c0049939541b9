#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "hpe/field.hpp"

namespace hpe {

/// Smooth radial cutoffs shared by every block operator.
///   psi(z) = 1 for |z| <= 3/4, 0 for |z| >= 4/3, smooth monotone in between
///   phi(z) = psi(z/2) - psi(z), supported in 3/4 <= |z| <= 8/3
double cutoff_psi(double z);
double cutoff_phi(double z);

inline constexpr double ring_inner = 0.75;
inline constexpr double ring_outer = 8.0 / 3.0;

class DyadicFilterBank {
 public:
  DyadicFilterBank() = default;
  /// Explicit block range; multipliers are tabulated on the grid wavenumbers.
  DyadicFilterBank(const StripGrid& grid, int q_min, int q_max);

  [[nodiscard]] const StripGrid& grid() const { return grid_; }
  [[nodiscard]] int q_min() const { return q_min_; }
  [[nodiscard]] int q_max() const { return q_max_; }
  [[nodiscard]] int block_count() const { return q_max_ - q_min_ + 1; }

  /// phi(2^-q |xi_k|); 0 outside [q_min, q_max].
  [[nodiscard]] double phi(int q, int k) const;
  /// psi(2^-q |xi_k|) for any q (computed on the fly outside the table).
  [[nodiscard]] double psi(int q, int k) const;
  /// Low-frequency catch-all psi(2^-q_min |xi_k|).
  [[nodiscard]] double catch_all(int k) const { return psi(q_min_, k); }
  /// True where phi(2^-q |xi_k|) == 1.
  [[nodiscard]] bool in_annulus(int q, int k) const;

  /// Block multiplier of q as a per-mode vector.
  [[nodiscard]] std::vector<double> block_multiplier(int q) const;

 private:
  StripGrid grid_{};
  int q_min_ = 0;
  int q_max_ = -1;
  std::vector<double> phi_;  // (q - q_min) * modes_x + k
  std::vector<double> psi_;
};

/// Bank covering every nonzero grid wavenumber: the catch-all holds only the
/// mean mode and phi blocks partition the rest.
DyadicFilterBank build_filter_bank(const StripGrid& grid);

SpectralField dyadic_block(const SpectralField& f, int q, const DyadicFilterBank& bank);
SpectralField low_pass(const SpectralField& f, int q, const DyadicFilterBank& bank);
/// The k = 0 part of f.
SpectralField mean_mode(const SpectralField& f);

/// ||Delta_q f||_{L^2} for q = q_min..q_max.
std::vector<double> block_norms(const SpectralField& f, const DyadicFilterBank& bank);
/// ||f_{k=0}||_{L^2}.
double mean_norm(const SpectralField& f);

inline constexpr double besov_s_min = -2.0;
inline constexpr double besov_s_max = 3.0;

/// sum_q 2^{qs} ||Delta_q f||; the mean mode is not included.
double besov_norm(const SpectralField& f, double s, const DyadicFilterBank& bank);
/// besov_norm plus ||f_{k=0}|| (inhomogeneous low block with weight 1).
double besov_norm_with_mean(const SpectralField& f, double s, const DyadicFilterBank& bank);
/// Besov norm of a vector field, blockwise l^2 over the components.
double besov_norm_pair(const SpectralField& f, const SpectralField& g, double s,
                       const DyadicFilterBank& bank, bool with_mean = false);

/// Per-block L^2 history of one field.
struct NormSeries {
  std::string name;
  double s = 0.5;
  int q_min = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> blocks;  // [time][q - q_min]
  std::vector<double> mean;                 // optional k = 0 history

  void append(double t, std::vector<double> block_l2, double mean_l2 = -1.0);
  void record(double t, const SpectralField& f, const DyadicFilterBank& bank,
              bool with_mean = false);
  [[nodiscard]] bool empty() const { return times.empty(); }
  [[nodiscard]] bool has_mean() const { return !mean.empty(); }

  /// Copy with every sample multiplied by factor[i].
  [[nodiscard]] NormSeries scaled(const std::vector<double>& factor) const;

  /// Rows t,q,block_l2. The mean mode, when tracked, is written as q = q_min - 1.
  void write_csv(std::ostream& os) const;
};

inline constexpr double p_inf = std::numeric_limits<double>::infinity();

/// sum_q 2^{qs} (int_0^T ||Delta_q f||^p dt)^{1/p}, trapezoid in time.
double chemin_lerner_norm(const NormSeries& series, double p);
/// As chemin_lerner_norm with int_0^T w(t) ||Delta_q f||^p dt.
double weighted_cl_norm(const NormSeries& series, const std::vector<double>& weight, double p);

struct BonySplit {
  SpectralField t_ab;  // sum_q S_{q-1} a  Delta_q b
  SpectralField t_ba;  // sum_q S_{q-1} b  Delta_q a
  SpectralField rest;  // sum_{|q-q'|<=1} Delta_q a Delta_q' b
};

/// Paraproduct split. The low block below q_min is the catch-all. Products are
/// evaluated pointwise at the nodes with the 2/3 rule, so the parts add up to
/// product(a, b).
BonySplit bony_split(const SpectralField& a, const SpectralField& b,
                     const DyadicFilterBank& bank);

struct BernsteinReport {
  double ratio = 0.0;
  double bound = ring_outer;  // ratio must lie in [bound^-k, bound^k]
  bool degenerate = false;
  bool within = false;
};

/// ||d_x^k f|| / (lambda^k ||f||) for f supported in 3/4 lambda <= |xi| <= 8/3 lambda.
BernsteinReport bernstein_ratio(const SpectralField& f, int k, double lambda);

}  // namespace hpe
