#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hpe/runs.hpp"

namespace hpe {

// --- weighted norm histories ------------------------------------------------------

/// int_0^1 |f_k(y)|^2 dy per horizontal mode.
using Profile = std::vector<double>;
Profile profile(const SpectralField& f);
/// Componentwise sum; `b` may be scaled by `scale^2` first.
void accumulate(Profile& a, const Profile& b, double scale = 1.0);

/// Block norms of factor_i e^{radius_i |D|} f at the given times, rebuilt
/// from per-mode profiles. The mean mode is tracked.
NormSeries weighted_series(const std::string& name, double s, const std::vector<double>& times,
                           const std::vector<Profile>& profiles,
                           const std::vector<double>& radius, const std::vector<double>& factor,
                           const DyadicFilterBank& bank);

// --- certificates ---------------------------------------------------------------

enum class CertificateStatus { holds, violated, degenerate };
std::string to_string(CertificateStatus s);

struct CertificateReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double fitted_c = 0.0;  // lhs / (rhs * normalization)
  double budget = 0.0;    // holds iff lhs <= budget * rhs
  CertificateStatus status = CertificateStatus::degenerate;
  StripGrid grid;
  double eps = 0.0;
  double dt = 0.0;
  std::vector<std::pair<std::string, double>> metadata;

  [[nodiscard]] bool holds() const;
};

/// ||e^{Rt}(u_phi, T_phi)||_{L~inf(B^1/2)} + 1/2 ||e^{Rt} d_y u_phi||_{L~2(B^1/2)}
/// against ||e^{a|D|}(u0, T0)||_{B^1/2}; fitted C = lhs / (2 rhs).
CertificateReport certify_limit_energy(const RunRecord& run, const DyadicFilterBank& bank,
                                       double budget);

/// ||e^{Rt}(d_t u)_phi||_{L~2(B^3/2)} + 1/2 ||e^{Rt} d_y u_phi||_{L~inf(B^3/2)} against
/// ||e^{a|D|} d_y u0||_{B^3/2} + ||e^{a|D|} d_y u0||_{B^5/2} + ||e^{a|D|} d_y T0||_{B^3/2}.
/// Needs samples at least every `max_interval`.
CertificateReport certify_dtu(const RunRecord& run, const DyadicFilterBank& bank, double budget,
                              double max_interval = 0.05);

/// Four-term energy of the scaled primitive system against
/// ||e^{a|D|}(u0, eps v0, T0)||_{B^1/2}; fitted C = lhs / rhs.
CertificateReport certify_pe_energy(const RunRecord& run, const DyadicFilterBank& bank,
                                    double budget);

// --- bilinear estimates ------------------------------------------------------------

enum class LemmaKind { uww, vww_u, vww_T, vvv };
std::string to_string(LemmaKind k);
LemmaKind lemma_kind_from_string(const std::string& s);

/// Synthetic time window for the bilinear estimates. The weight radius is
/// a - lambda * int_0^t rate, with rate the theta (or tau for vvv) rate of u.
struct LemmaSample {
  std::vector<double> times;
  std::vector<SpectralField> u;  // sine
  std::vector<SpectralField> w;  // sine (second factor: w, or T)
  double eps = 0.5;
  double a = 0.3;
  double lambda = 1.0;
  double R = std::numbers::pi * std::numbers::pi / 2;
};

struct LemmaSampleSpec {
  int bands = 4;
  int vertical_modes = 8;
  double a = 0.3;
  double lambda = 1.0;
  double window = 0.2;
  int times = 11;
  double amplitude = 1.0;
  double eps = 0.5;
};

/// Coefficients e^{-a k} times random phases on modes 1..bands, the first
/// `vertical_modes` sine modes, u compatibility-projected; sine mode m decays
/// like e^{-(k^2 + m^2 pi^2) t}.
LemmaSample make_lemma_sample(const StripGrid& grid, const LemmaSampleSpec& spec,
                              std::uint64_t seed);

struct LemmaTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<double> radius;  // weight radius at the sample times
};

/// LHS with products formed directly (`bony = false`) or as the sum of the
/// two paraproducts and the remainder (`bony = true`).
LemmaTerms lemma_terms(LemmaKind kind, const LemmaSample& sample, double s,
                       const DyadicFilterBank& bank, bool bony = false);

CertificateReport lemma_ratio(LemmaKind kind, const LemmaSample& sample, double s,
                              const DyadicFilterBank& bank, double budget = 0.0);

/// Exact L^2(0,1) pairing of mode k of two sine/cosine fields (possibly on
/// different vertical resolutions), times Lx and the half-spectrum multiplicity.
double mode_pairing(const SpectralField& f, const SpectralField& g, int k);

struct FittedConstants {
  double C = 1.0;        // max(1, largest lemma ratio)
  double lambda = 2.0;   // 2 C^2
  double c0 = 0.0;       // min{1/(2C^2), a/(2 lambda)} / (C a)
  double threshold = 0.0;  // c0 * a
};

/// Largest ratio over `samples` synthetic windows per lemma kind at s = 1/2.
FittedConstants fit_constants(double a, int nx = 32, int ny = 32, int samples = 8,
                              std::uint64_t seed = 7);
FittedConstants constants_from_c(double C, double a, std::optional<double> lambda = {});

// --- convergence in eps --------------------------------------------------------------

struct SweepSetup {
  StripGrid grid;
  StepParams params;
  std::vector<double> eps;  // strictly decreasing
  double horizon = 1.0;
  double sample_every = 0.01;
  double a = 0.3;
  double lambda = 1.0;
  double C = 1.0;
  std::optional<double> mu_override;
  std::string eta_limit_weight = "phi";
};

struct SweepLeg {
  double eps = 0.0;
  double error_sup = 0.0;    // ||(w1, eps w2)||_{L~inf(B^1/2)}
  double error_dy = 0.0;     // ||d_y (w1, eps w2)||_{L~2(B^1/2)}
  double error_eps32 = 0.0;  // eps ||(w1, eps w2)||_{L~2(B^3/2)}
  double initial_discrepancy = 0.0;
  double M = 1.0;
  double mu = 1.0;
  double eta_final = 0.0;
  bool ordering_holds = true;
  std::string status = "ok";
  [[nodiscard]] double error_total() const { return error_sup + error_dy + error_eps32; }
};

struct SweepResult {
  std::vector<SweepLeg> legs;
  std::optional<double> slope;
  std::optional<double> intercept;
};

/// Runs the limit system and one primitive run per eps in lockstep from the
/// same data and fits log(error_total) against log(eps).
SweepResult convergence_sweep(const SweepSetup& setup, const InitialData& data,
                              const DyadicFilterBank& bank);

/// Least-squares line through (log x, log y).
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

// --- smallness -----------------------------------------------------------------

struct SmallnessReport {
  double value = 0.0;      // ||e^{a|D|}u0||_{B^1/2} + ||e^{a|D|}T0||_{B^1/2}
  double budget = 0.0;     // c0 * a
  double threshold = 0.0;  // min{1/(2C^2), a/(2 lambda)} / C
  double margin = 0.0;     // budget - value
  double threshold_margin = 0.0;
  bool pass = false;
  bool boundary = false;
};

SmallnessReport smallness_check(const InitialData& data, double a, double c0,
                                const FittedConstants& k, const DyadicFilterBank& bank);

// --- CSV ---------------------------------------------------------------------------

void write_certificates_csv(std::ostream& os, const std::vector<CertificateReport>& reports,
                            const std::vector<std::string>& header = {});
void write_sweep_csv(std::ostream& os, const SweepResult& r,
                     const std::vector<std::string>& header = {});

}  // namespace hpe
