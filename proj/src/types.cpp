#include "epgram/types.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace epgram {

ExpectileLevel::ExpectileLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("expectile level must lie strictly in (0,1), got " +
                      std::to_string(alpha));
  }
}

QuantileLevel::QuantileLevel(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ConfigError("quantile level must lie strictly in (0,1), got " +
                      std::to_string(theta));
  }
}

TimeSeries::TimeSeries(std::vector<double> values,
                       std::optional<double> sample_rate)
    : values_(std::move(values)), sample_rate_(sample_rate) {
  if (values_.empty()) {
    throw InputError("time series must contain at least one observation");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("non-finite value at observation " + std::to_string(i + 1));
    }
  }
  if (sample_rate_ && !(*sample_rate_ > 0.0 && std::isfinite(*sample_rate_))) {
    throw InputError("sample rate must be a positive finite number");
  }
}

double TimeSeries::mean() const {
  double s = std::accumulate(values_.begin(), values_.end(), 0.0);
  return s / static_cast<double>(values_.size());
}

TimeSeries TimeSeries::demeaned() const {
  double m = mean();
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] - m;
  return TimeSeries(std::move(out), sample_rate_);
}

FrequencyGrid FrequencyGrid::fourier(int n) {
  if (n < 4) {
    throw ConfigError("periodogram frequency grid requires n >= 4, got " +
                      std::to_string(n));
  }
  FrequencyGrid g;
  g.n = n;
  int k = n / 2;
  g.indices.reserve(k);
  g.omegas.reserve(k);
  for (int nu = 1; nu <= k; ++nu) {
    g.indices.push_back(nu);
    g.omegas.push_back(2.0 * std::numbers::pi * nu / n);
  }
  return g;
}

std::optional<std::size_t> FrequencyGrid::find_omega(double omega,
                                                     double tol) const {
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (std::abs(omegas[i] - omega) <= tol) return i;
  }
  return std::nullopt;
}

bool PeriodogramMatrix::all_converged() const {
  for (const auto& row : converged) {
    for (bool c : row) {
      if (!c) return false;
    }
  }
  return true;
}

}  // namespace epgram
