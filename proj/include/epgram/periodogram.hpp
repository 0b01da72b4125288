#pragma once

#include <complex>
#include <vector>

#include "epgram/expectile.hpp"
#include "epgram/types.hpp"

namespace epgram {

/// Raw expectile periodogram over the Fourier grid nu = 1..floor(n/2) at
/// one or more expectile levels. Ordinates are (n/4)*(beta2^2+beta3^2)
/// inside (0,pi) and n*beta2^2 at pi; the omega = 0 ordinate is zero by
/// convention and is not part of the grid. Cells whose IRLS solve did not
/// converge are flagged in `converged`; computation continues.
PeriodogramMatrix expectile_periodogram(const TimeSeries& y,
                                        const std::vector<ExpectileLevel>& levels,
                                        bool demean = true,
                                        const IrlsOptions& opts = {});

/// Expectile periodogram ordinates at selected frequency indices only.
std::vector<double> expectile_periodogram_at(const TimeSeries& y,
                                             ExpectileLevel level,
                                             const std::vector<int>& nus,
                                             bool demean = true,
                                             const IrlsOptions& opts = {});

/// Expectile discrete Fourier transform over {0, omega_1, ..., omega_K}:
/// n*beta1 at omega = 0, (n/2)*(beta2 - i*beta3) inside (0,pi) and
/// n*beta2 at pi. Computed on the series as given (no demeaning), so the
/// omega = 0 entry is n times the scalar expectile.
std::vector<std::complex<double>> edft(const TimeSeries& y,
                                       ExpectileLevel alpha,
                                       const IrlsOptions& opts = {});

/// Divide each row by its sum so rows integrate to one. Throws ZeroRow for
/// a row of all-zero ordinates (e.g. a constant series).
PeriodogramMatrix normalize(const PeriodogramMatrix& pm);

/// The level grid used throughout: 0.05, 0.06, ..., 0.95.
std::vector<double> default_level_grid();

std::vector<ExpectileLevel> make_expectile_levels(const std::vector<double>& values);
std::vector<QuantileLevel> make_quantile_levels(const std::vector<double>& values);

}  // namespace epgram
