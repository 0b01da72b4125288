#include "epgram/periodogram.hpp"

#include <algorithm>
#include <cmath>

#include "irls.hpp"
#include "trig_design.hpp"

namespace epgram {

namespace {

std::vector<double> sorted_distinct(const std::vector<double>& levels) {
  if (levels.empty()) throw ConfigError("level list must not be empty");
  std::vector<double> out = levels;
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] == out[i - 1]) throw ConfigError("levels must be distinct");
  }
  return out;
}

double ordinate_from(const detail::IrlsFit& fit, int p, int n) {
  if (p == 3) return 0.25 * n * (fit.beta[1] * fit.beta[1] + fit.beta[2] * fit.beta[2]);
  return static_cast<double>(n) * fit.beta[1] * fit.beta[1];
}

}  // namespace

PeriodogramMatrix expectile_periodogram(const TimeSeries& y,
                                        const std::vector<ExpectileLevel>& levels,
                                        bool demean, const IrlsOptions& opts) {
  std::vector<double> raw;
  raw.reserve(levels.size());
  for (const auto& l : levels) raw.push_back(l.value());
  const std::vector<double> alphas = sorted_distinct(raw);

  const int n = static_cast<int>(y.size());
  PeriodogramMatrix pm;
  pm.grid = FrequencyGrid::fourier(n);
  pm.levels = alphas;

  const TimeSeries data = demean ? y.demeaned() : y;
  const double* yv = data.values().data();

  const std::size_t k = pm.grid.size();
  pm.rows.assign(alphas.size(), std::vector<double>(k, 0.0));
  pm.converged.assign(alphas.size(), std::vector<bool>(k, true));

  detail::TrigTable table(n);
  std::vector<double> c, s;
  for (std::size_t f = 0; f < k; ++f) {
    const int nu = pm.grid.indices[f];
    const int p = detail::design_width(nu, n);
    table.columns(nu, c, s);
    for (std::size_t li = 0; li < alphas.size(); ++li) {
      auto fit = detail::irls_expectile(yv, n, c.data(), s.data(), p,
                                        alphas[li], opts);
      pm.rows[li][f] = ordinate_from(fit, p, n);
      pm.converged[li][f] = fit.converged;
    }
  }
  return pm;
}

std::vector<double> expectile_periodogram_at(const TimeSeries& y,
                                             ExpectileLevel level,
                                             const std::vector<int>& nus,
                                             bool demean,
                                             const IrlsOptions& opts) {
  const int n = static_cast<int>(y.size());
  FrequencyGrid::fourier(n);  // enforces n >= 4
  const TimeSeries data = demean ? y.demeaned() : y;
  const double* yv = data.values().data();

  detail::TrigTable table(n);
  std::vector<double> c, s, out;
  out.reserve(nus.size());
  for (int nu : nus) {
    if (nu <= 0 || 2 * nu > n) throw ConfigError("frequency index out of range");
    const int p = detail::design_width(nu, n);
    table.columns(nu, c, s);
    auto fit = detail::irls_expectile(yv, n, c.data(), s.data(), p,
                                      level.value(), opts);
    out.push_back(ordinate_from(fit, p, n));
  }
  return out;
}

std::vector<std::complex<double>> edft(const TimeSeries& y,
                                       ExpectileLevel alpha,
                                       const IrlsOptions& opts) {
  const int n = static_cast<int>(y.size());
  const FrequencyGrid grid = FrequencyGrid::fourier(n);
  const double* yv = y.values().data();

  std::vector<std::complex<double>> z;
  z.reserve(grid.size() + 1);
  z.emplace_back(n * scalar_expectile(y, alpha, opts), 0.0);

  detail::TrigTable table(n);
  std::vector<double> c, s;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const int nu = grid.indices[f];
    const int p = detail::design_width(nu, n);
    table.columns(nu, c, s);
    auto fit = detail::irls_expectile(yv, n, c.data(), s.data(), p,
                                      alpha.value(), opts);
    if (p == 3) {
      z.emplace_back(0.5 * n * fit.beta[1], -0.5 * n * fit.beta[2]);
    } else {
      z.emplace_back(static_cast<double>(n) * fit.beta[1], 0.0);
    }
  }
  return z;
}

PeriodogramMatrix normalize(const PeriodogramMatrix& pm) {
  PeriodogramMatrix out = pm;
  for (std::size_t li = 0; li < out.rows.size(); ++li) {
    double sum = 0.0;
    for (double v : out.rows[li]) sum += v;
    if (!(sum > 0.0)) {
      throw ZeroRow("periodogram row " + std::to_string(li) +
                    " sums to zero; cannot normalize");
    }
    for (double& v : out.rows[li]) v /= sum;
  }
  out.normalized = true;
  return out;
}

std::vector<double> default_level_grid() {
  std::vector<double> out;
  out.reserve(91);
  for (int k = 5; k <= 95; ++k) out.push_back(k / 100.0);
  return out;
}

std::vector<ExpectileLevel> make_expectile_levels(const std::vector<double>& values) {
  std::vector<ExpectileLevel> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

std::vector<QuantileLevel> make_quantile_levels(const std::vector<double>& values) {
  std::vector<QuantileLevel> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

}  // namespace epgram
