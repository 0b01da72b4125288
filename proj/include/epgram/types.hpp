#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epgram {

// Error taxonomy. The CLI maps these onto stable exit codes:
// InputError -> 2, NumericError -> 3, ConfigError -> 4.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateDesign : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroRow : public NumericError {
 public:
  using NumericError::NumericError;
};

class AllZero : public NumericError {
 public:
  using NumericError::NumericError;
};

class KernelTooWide : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class GridMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class SupportMismatch : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonStationary : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ReplicateFailure : public NumericError {
 public:
  ReplicateFailure(std::size_t index, const std::string& what)
      : NumericError("replicate " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Asymmetry level of the expectile loss, strictly inside (0,1).
class ExpectileLevel {
 public:
  explicit ExpectileLevel(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

/// Quantile level for the check loss, strictly inside (0,1).
class QuantileLevel {
 public:
  explicit QuantileLevel(double theta);
  double value() const { return theta_; }

 private:
  double theta_;
};

/// Ordered real observations. All values must be finite; length checks
/// specific to periodograms (n >= 4) happen at the point of use.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values,
                      std::optional<double> sample_rate = std::nullopt);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::optional<double> sample_rate() const { return sample_rate_; }

  double mean() const;
  TimeSeries demeaned() const;

 private:
  std::vector<double> values_;
  std::optional<double> sample_rate_;
};

/// Fourier frequencies omega_nu = 2*pi*nu/n for nu = 1..floor(n/2).
/// The last index maps to omega = pi exactly when n is even.
struct FrequencyGrid {
  int n = 0;
  std::vector<int> indices;
  std::vector<double> omegas;

  static FrequencyGrid fourier(int n);

  std::size_t size() const { return omegas.size(); }
  bool has_nyquist() const { return n % 2 == 0; }
  // Position of a frequency on the grid, or nullopt if absent.
  std::optional<std::size_t> find_omega(double omega, double tol = 1e-9) const;
};

/// Grid of nonnegative periodogram ordinates indexed by (level, frequency).
/// A single-row matrix represents the ordinary or quantile periodogram.
struct PeriodogramMatrix {
  FrequencyGrid grid;
  std::vector<double> levels;              // sorted, distinct
  std::vector<std::vector<double>> rows;   // rows[level][frequency]
  std::vector<std::vector<bool>> converged;  // per-cell solver status
  bool normalized = false;

  std::size_t level_count() const { return levels.size(); }
  std::size_t freq_count() const { return grid.size(); }
  double at(std::size_t level_idx, std::size_t freq_idx) const {
    return rows[level_idx][freq_idx];
  }
  bool all_converged() const;
};

}  // namespace epgram
