#pragma once

#include <cstdint>
#include <vector>

#include "epgram/types.hpp"

namespace epgram {

/// Ordinary periodogram |DFT|^2/n of the demeaned series on the Fourier
/// grid, returned as a single-row matrix (level label 0.5).
PeriodogramMatrix ordinary_periodogram(const TimeSeries& y);

/// Check loss: theta*u for u >= 0, -(1-theta)*u otherwise.
double check_loss(double u, QuantileLevel theta);

/// Solution of one trigonometric quantile regression cell.
struct QuantileFit {
  double omega = 0.0;
  double theta = 0.5;
  std::vector<double> beta;
  double objective = 0.0;
  bool converged = true;
  int pivots = 0;
  int basis[3] = {-1, -1, -1};  // interpolated observations at the vertex
};

/// Quantile regression on the trigonometric design at a Fourier frequency:
/// smoothed-check warm start followed by exact basis pivoting, which
/// terminates with a certified vertex optimum of the piecewise-linear
/// convex program.
QuantileFit trig_quantile_fit(const TimeSeries& y, double omega,
                              QuantileLevel theta);

/// Quantile periodogram at the given levels; conventions mirror the
/// expectile periodogram (same grid, same edge-frequency designs).
PeriodogramMatrix quantile_periodogram(const TimeSeries& y,
                                       const std::vector<QuantileLevel>& thetas,
                                       bool demean = true);

/// Type-7 empirical quantile (linear interpolation of order statistics).
double empirical_quantile(std::vector<double> values, double theta);

/// Indicator of exceeding the empirical theta-quantile.
std::vector<std::uint8_t> level_crossing_process(const TimeSeries& y,
                                                 QuantileLevel theta);

/// Asymmetrically-scaled expectile crossing process: the expectile-loss
/// derivative evaluated at deviations from the empirical alpha-expectile.
/// Sums to zero by the normal equation.
std::vector<double> asecp(const TimeSeries& y, ExpectileLevel alpha);

}  // namespace epgram
