#pragma once

#include <cstddef>
#include <vector>

#include "epgram/types.hpp"

namespace epgram {

struct FisherResult {
  double statistic = 0.0;  // max ordinate / sum, in (0,1]
  int q = 0;               // number of ordinates tested
  double p_value = 0.0;    // filled by fisher_test; NaN from fisher_statistic
  std::size_t argmax_index = 0;
  double argmax_frequency = 0.0;  // radians; 0 when no grid was supplied
};

/// max/sum of the ordinates, ties broken to the lowest frequency.
/// `omegas`, when given, must parallel `ordinates` and fixes the reported
/// argmax frequency.
FisherResult fisher_statistic(const std::vector<double>& ordinates,
                              const std::vector<double>& omegas = {});

/// Exact null tail probability P(max/sum > x) for q independent
/// exponential ordinates: the alternating binomial sum, evaluated from the
/// smallest term with compensated summation and clipped to [0,1].
double fisher_tail(double x, int q);

struct FisherDecision {
  FisherResult result;
  double significance = 0.05;
  bool reject = false;
};

/// Fisher's test on one level row of a periodogram matrix. Ordinates at
/// strictly interior frequencies (0,pi) enter the statistic; the Nyquist
/// ordinate is excluded because its null law has one degree of freedom.
FisherDecision fisher_test(const PeriodogramMatrix& pm, std::size_t level_index,
                           double significance);

struct Chi2Diagnostic {
  double ks_distance = 0.0;     // ordinates/reference against Exp(1)
  double var_mean_ratio = 0.0;  // Var/Mean^2, near 1 under the chi^2_2 limit
  std::size_t count = 0;
};

/// Distributional diagnostics for replicated ordinates at one frequency
/// against the scaled-chi-square limit. Requires >= 1000 replicates.
Chi2Diagnostic chi2_limit_check(const std::vector<double>& ordinates,
                                double reference_g);

/// Asymptotic Kolmogorov-Smirnov critical value at the given significance.
double ks_critical_value(double significance, std::size_t m);

}  // namespace epgram
