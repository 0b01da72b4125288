#include "epgram/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace epgram {

FisherResult fisher_statistic(const std::vector<double>& ordinates,
                              const std::vector<double>& omegas) {
  if (ordinates.size() < 2) {
    throw ConfigError("Fisher statistic needs at least two ordinates");
  }
  if (!omegas.empty() && omegas.size() != ordinates.size()) {
    throw GridMismatch("frequency list does not match the ordinates");
  }
  double sum = 0.0;
  double maxv = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    double v = ordinates[i];
    if (v < 0.0) throw NumericError("negative periodogram ordinate");
    sum += v;
    if (v > maxv) {  // strict: ties resolve to the lowest frequency
      maxv = v;
      arg = i;
    }
  }
  if (!(sum > 0.0)) throw AllZero("all ordinates are zero");

  FisherResult r;
  r.statistic = maxv / sum;
  r.q = static_cast<int>(ordinates.size());
  r.p_value = std::numeric_limits<double>::quiet_NaN();
  r.argmax_index = arg;
  r.argmax_frequency = omegas.empty() ? 0.0 : omegas[arg];
  return r;
}

double fisher_tail(double x, int q) {
  if (q < 2) throw ConfigError("Fisher tail requires q >= 2");
  // x = 1 is the attainable upper end of max/sum; the sum is empty there.
  if (!(x > 0.0 && x <= 1.0)) {
    throw ConfigError("Fisher tail requires x in (0,1]");
  }
  int kmax = static_cast<int>(std::floor(1.0 / x));
  kmax = std::min(kmax, q);

  // Terms alternate and can cancel heavily; accumulate from the smallest
  // (k = kmax) upward with Kahan compensation. Binomials switch to the
  // log-gamma domain for large q where the running product would overflow.
  const bool log_domain = q > 300;
  double sum = 0.0, comp = 0.0;
  for (int k = kmax; k >= 1; --k) {
    double base = 1.0 - static_cast<double>(k) * x;
    if (base <= 0.0) continue;
    double term;
    if (log_domain) {
      double lc = std::lgamma(q + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(q - k + 1.0);
      term = std::exp(lc + (q - 1.0) * std::log(base));
    } else {
      double c = 1.0;
      for (int j = 1; j <= k; ++j) c *= static_cast<double>(q - k + j) / j;
      term = c * std::pow(base, q - 1);
    }
    if (k % 2 == 0) term = -term;
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  sum += comp;
  return std::clamp(sum, 0.0, 1.0);
}

FisherDecision fisher_test(const PeriodogramMatrix& pm, std::size_t level_index,
                           double significance) {
  if (level_index >= pm.level_count()) {
    throw ConfigError("level index out of range");
  }
  if (!(significance > 0.0 && significance < 1.0)) {
    throw ConfigError("significance must lie in (0,1)");
  }
  std::vector<double> ords;
  std::vector<double> omegas;
  ords.reserve(pm.freq_count());
  omegas.reserve(pm.freq_count());
  for (std::size_t f = 0; f < pm.freq_count(); ++f) {
    if (pm.grid.omegas[f] < std::numbers::pi - 1e-12) {
      ords.push_back(pm.rows[level_index][f]);
      omegas.push_back(pm.grid.omegas[f]);
    }
  }
  FisherDecision d;
  d.result = fisher_statistic(ords, omegas);
  d.result.p_value = fisher_tail(d.result.statistic, d.result.q);
  d.significance = significance;
  d.reject = d.result.p_value < significance;
  return d;
}

Chi2Diagnostic chi2_limit_check(const std::vector<double>& ordinates,
                                double reference_g) {
  if (ordinates.size() < 1000) {
    throw ConfigError("chi2_limit_check needs at least 1000 replicates");
  }
  if (!(reference_g > 0.0)) {
    throw ConfigError("reference spectrum value must be positive");
  }
  std::vector<double> x(ordinates);
  for (double& v : x) v /= reference_g;
  std::sort(x.begin(), x.end());

  const double m = static_cast<double>(x.size());
  double ks = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = 1.0 - std::exp(-x[i]);  // Exp(1) = (1/2)*chi^2_2
    double lo = f - static_cast<double>(i) / m;
    double hi = static_cast<double>(i + 1) / m - f;
    ks = std::max({ks, lo, hi});
    mean += x[i];
  }
  mean /= m;
  double var = 0.0;
  for (double v : x) {
    double d = v - mean;
    var += d * d;
  }
  var /= (m - 1.0);

  Chi2Diagnostic out;
  out.ks_distance = ks;
  out.var_mean_ratio = var / (mean * mean);
  out.count = x.size();
  return out;
}

double ks_critical_value(double significance, std::size_t m) {
  if (!(significance > 0.0 && significance < 1.0) || m == 0) {
    throw ConfigError("invalid KS critical value request");
  }
  double k = std::sqrt(-0.5 * std::log(significance / 2.0));
  return k / std::sqrt(static_cast<double>(m));
}

}  // namespace epgram
