#pragma once

#include <vector>

#include "epgram/types.hpp"

namespace epgram {

/// Nonnegative smoothing weights W_{-M..M} summing to one.
struct SmoothingKernel {
  int half_width = 0;
  std::vector<double> weights;  // size 2*half_width+1

  static SmoothingKernel daniell(int half_width);           // uniform
  static SmoothingKernel modified_daniell(int half_width);  // half-weight ends
  /// Default rule when no half-width is given: M = round(sqrt(n)/2).
  static int default_half_width(int n);

  void validate() const;
};

struct SpectrumEstimate {
  FrequencyGrid grid;
  double level = 0.5;
  std::vector<double> values;
  SmoothingKernel kernel;
  bool normalized = false;
};

/// eta(alpha) = 1/2 * {alpha(1-F) + (1-alpha)F}^{-1} with F the marginal
/// CDF evaluated at the alpha-expectile.
double scaling_factor_eta(ExpectileLevel alpha, double F_at_mu);

/// Biased (divide-by-n) sample autocovariances gamma(0..max_lag) of the
/// asymmetrically-scaled expectile crossing process of y.
std::vector<double> asecp_acf(const TimeSeries& y, ExpectileLevel alpha,
                              int max_lag);

/// Truncated cosine transform h(omega) = gamma(0) + 2*sum gamma(tau)cos(omega*tau).
/// Raw truncated sums may be negative; callers decide whether to clip.
std::vector<double> h_spectrum(const std::vector<double>& acf,
                               const std::vector<double>& omegas);

/// Default truncation lag for h_spectrum: min(n-1, 10*sqrt(n)).
int default_truncation_lag(int n);

/// Kernel-smooth one row of periodogram ordinates. Out-of-range neighbours
/// are reflected about the first and last grid positions.
std::vector<double> smooth_row(const std::vector<double>& ordinates,
                               const SmoothingKernel& kernel);

SpectrumEstimate smooth(const PeriodogramMatrix& pm, std::size_t level_index,
                        const SmoothingKernel& kernel);

double mse(const std::vector<double>& a, const std::vector<double>& b);

/// KL divergence sum p*log(p/q) with 0*log0 = 0. Inputs must be normalized
/// rows; q must be positive wherever p is.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

/// Sample variance (denominator n-1) of the ordinates across levels at one
/// grid frequency.
double level_variance(const PeriodogramMatrix& pm, double omega);

/// Sum of squared second differences across levels at one grid frequency.
double roughness(const PeriodogramMatrix& pm, double omega);

}  // namespace epgram
