#include "epgram/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "epgram/classical.hpp"
#include "epgram/expectile.hpp"

namespace epgram {

SmoothingKernel SmoothingKernel::daniell(int half_width) {
  if (half_width < 0) throw ConfigError("kernel half-width must be >= 0");
  SmoothingKernel k;
  k.half_width = half_width;
  k.weights.assign(2 * half_width + 1, 1.0 / (2 * half_width + 1));
  return k;
}

SmoothingKernel SmoothingKernel::modified_daniell(int half_width) {
  if (half_width < 0) throw ConfigError("kernel half-width must be >= 0");
  SmoothingKernel k;
  k.half_width = half_width;
  if (half_width == 0) {
    k.weights = {1.0};
    return k;
  }
  k.weights.assign(2 * half_width + 1, 1.0 / (2 * half_width));
  k.weights.front() = 1.0 / (4 * half_width);
  k.weights.back() = 1.0 / (4 * half_width);
  return k;
}

int SmoothingKernel::default_half_width(int n) {
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)) / 2.0));
}

void SmoothingKernel::validate() const {
  if (static_cast<int>(weights.size()) != 2 * half_width + 1) {
    throw ConfigError("kernel weight count must be 2*half_width+1");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigError("kernel weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ConfigError("kernel weights must sum to one");
  }
}

double scaling_factor_eta(ExpectileLevel alpha, double F_at_mu) {
  if (!(F_at_mu > 0.0 && F_at_mu < 1.0)) {
    throw ConfigError("F(mu(alpha)) must lie strictly in (0,1)");
  }
  double a = alpha.value();
  return 0.5 / (a * (1.0 - F_at_mu) + (1.0 - a) * F_at_mu);
}

std::vector<double> asecp_acf(const TimeSeries& y, ExpectileLevel alpha,
                              int max_lag) {
  const int n = static_cast<int>(y.size());
  if (max_lag < 0 || max_lag >= n) {
    throw ConfigError("max_lag must lie in [0, n)");
  }
  std::vector<double> a = asecp(y, alpha);
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= n;  // zero up to the normal-equation tolerance
  for (double& v : a) v -= mean;

  std::vector<double> gamma(max_lag + 1, 0.0);
  for (int tau = 0; tau <= max_lag; ++tau) {
    double s = 0.0;
    for (int t = 0; t + tau < n; ++t) s += a[t] * a[t + tau];
    gamma[tau] = s / n;
  }
  return gamma;
}

std::vector<double> h_spectrum(const std::vector<double>& acf,
                               const std::vector<double>& omegas) {
  if (acf.empty()) throw ConfigError("acf must contain gamma(0)");
  std::vector<double> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    double h = acf[0];
    for (std::size_t tau = 1; tau < acf.size(); ++tau) {
      h += 2.0 * acf[tau] * std::cos(w * static_cast<double>(tau));
    }
    out.push_back(h);
  }
  return out;
}

int default_truncation_lag(int n) {
  int lag = static_cast<int>(std::lround(10.0 * std::sqrt(static_cast<double>(n))));
  return std::min(n - 1, lag);
}

std::vector<double> smooth_row(const std::vector<double>& ordinates,
                               const SmoothingKernel& kernel) {
  kernel.validate();
  const int k = static_cast<int>(ordinates.size());
  const int m = kernel.half_width;
  if (2 * m >= k) {
    throw KernelTooWide("kernel half-width " + std::to_string(m) +
                        " too wide for " + std::to_string(k) + " ordinates");
  }
  std::vector<double> out(k, 0.0);
  for (int i = 0; i < k; ++i) {
    double acc = 0.0;
    for (int s = -m; s <= m; ++s) {
      int j = i + s;
      if (j < 0) j = -j;                       // mirror about the first ordinate
      if (j > k - 1) j = 2 * (k - 1) - j;      // mirror about the last ordinate
      acc += kernel.weights[s + m] * ordinates[j];
    }
    out[i] = acc;
  }
  return out;
}

SpectrumEstimate smooth(const PeriodogramMatrix& pm, std::size_t level_index,
                        const SmoothingKernel& kernel) {
  if (level_index >= pm.level_count()) {
    throw ConfigError("level index out of range");
  }
  SpectrumEstimate est;
  est.grid = pm.grid;
  est.level = pm.levels[level_index];
  est.kernel = kernel;
  est.normalized = false;
  est.values = smooth_row(pm.rows[level_index], kernel);
  return est;
}

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw GridMismatch("mse requires two equal-length rows");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty()) {
    throw GridMismatch("kl_divergence requires two equal-length rows");
  }
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6) {
    throw ConfigError("kl_divergence requires normalized rows");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0) {
      throw SupportMismatch("q vanishes where p is positive");
    }
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

namespace {
std::size_t column_at(const PeriodogramMatrix& pm, double omega) {
  auto idx = pm.grid.find_omega(omega);
  if (!idx) throw GridMismatch("omega is not on the matrix frequency grid");
  return *idx;
}
}  // namespace

double level_variance(const PeriodogramMatrix& pm, double omega) {
  if (pm.level_count() < 2) {
    throw ConfigError("level variance needs at least two levels");
  }
  std::size_t f = column_at(pm, omega);
  double mean = 0.0;
  for (std::size_t li = 0; li < pm.level_count(); ++li) mean += pm.rows[li][f];
  mean /= static_cast<double>(pm.level_count());
  double ss = 0.0;
  for (std::size_t li = 0; li < pm.level_count(); ++li) {
    double d = pm.rows[li][f] - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(pm.level_count() - 1);
}

double roughness(const PeriodogramMatrix& pm, double omega) {
  if (pm.level_count() < 3) {
    throw ConfigError("roughness needs at least three levels");
  }
  std::size_t f = column_at(pm, omega);
  double sum = 0.0;
  for (std::size_t li = 1; li + 1 < pm.level_count(); ++li) {
    double d = pm.rows[li + 1][f] - 2.0 * pm.rows[li][f] + pm.rows[li - 1][f];
    sum += d * d;
  }
  return sum;
}

}  // namespace epgram
