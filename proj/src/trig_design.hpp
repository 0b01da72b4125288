#pragma once

// Internal helpers shared by the periodogram solvers. Not installed.

#include <cmath>
#include <numbers>
#include <vector>

#include "epgram/types.hpp"

namespace epgram::detail {

// cos/sin of 2*pi*k/n for k = 0..n-1. Regressor values at Fourier frequency
// omega_nu and time t (1-based) are table entries at k = (nu*t) mod n, so one
// table serves every frequency of a series of length n.
struct TrigTable {
  explicit TrigTable(int n_) : n(n_), cs(n_), sn(n_) {
    for (int k = 0; k < n_; ++k) {
      double a = 2.0 * std::numbers::pi * k / n_;
      cs[k] = std::cos(a);
      sn[k] = std::sin(a);
    }
  }
  int n;
  std::vector<double> cs;
  std::vector<double> sn;

  // Fill the regressor columns for frequency index nu, t = 1..n.
  void columns(int nu, std::vector<double>& c, std::vector<double>& s) const {
    c.resize(n);
    s.resize(n);
    int k = 0;
    for (int t = 0; t < n; ++t) {
      k += nu;
      if (k >= n) k -= n;
      c[t] = cs[k];
      s[t] = sn[k];
    }
  }
};

// Number of regressors for a frequency: 3 inside (0,pi), 2 at pi, 1 at 0.
inline int design_width(int nu, int n) {
  if (nu == 0) return 1;
  if (2 * nu == n) return 2;
  return 3;
}

// Solve a symmetric positive definite p x p system (p <= 3) in-place via
// Cholesky. Returns false when the matrix is numerically singular.
inline bool solve_spd(int p, const double* a, const double* b, double* x) {
  double l[9] = {0};
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * p + j];
      for (int k = 0; k < j; ++k) s -= l[i * p + k] * l[j * p + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        l[i * p + i] = std::sqrt(s);
      } else {
        l[i * p + j] = s / l[j * p + j];
      }
    }
  }
  double z[3];
  for (int i = 0; i < p; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i * p + k] * z[k];
    z[i] = s / l[i * p + i];
  }
  for (int i = p - 1; i >= 0; --i) {
    double s = z[i];
    for (int k = i + 1; k < p; ++k) s -= l[k * p + i] * x[k];
    x[i] = s / l[i * p + i];
  }
  return true;
}

// General p x p solve (p <= 3) by Gaussian elimination with partial
// pivoting; used where the matrix is not symmetric.
inline bool solve_general(int p, double* a, double* b, double* x) {
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < p; ++col) {
    int piv = col;
    for (int r = col + 1; r < p; ++r) {
      if (std::abs(a[idx[r] * p + col]) > std::abs(a[idx[piv] * p + col])) piv = r;
    }
    std::swap(idx[col], idx[piv]);
    double d = a[idx[col] * p + col];
    if (std::abs(d) < 1e-300) return false;
    for (int r = col + 1; r < p; ++r) {
      double f = a[idx[r] * p + col] / d;
      if (f == 0.0) continue;
      for (int c = col; c < p; ++c) a[idx[r] * p + c] -= f * a[idx[col] * p + c];
      b[idx[r]] -= f * b[idx[col]];
    }
  }
  for (int row = p - 1; row >= 0; --row) {
    double s = b[idx[row]];
    for (int c = row + 1; c < p; ++c) s -= a[idx[row] * p + c] * x[c];
    x[row] = s / a[idx[row] * p + row];
  }
  return true;
}

// Validate that omega is 0 or a Fourier frequency of a length-n series and
// return the frequency index nu.
inline int omega_to_index(double omega, int n) {
  double ratio = omega * n / (2.0 * std::numbers::pi);
  int nu = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - nu) > 1e-8 || nu < 0 || 2 * nu > n) {
    throw ConfigError("omega is not a Fourier frequency of this series");
  }
  return nu;
}

}  // namespace epgram::detail
