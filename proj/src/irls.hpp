#pragma once

// Internal IRLS machinery for expectile regression on tiny fixed designs.

#include <cstring>
#include <vector>

#include "epgram/expectile.hpp"

namespace epgram::detail {

struct IrlsFit {
  double beta[3] = {0, 0, 0};
  int p = 0;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

// Weighted least squares expectile fit on the design [1, c, s] (first p
// columns). Weights are alpha on nonnegative residuals and 1-alpha below
// zero; each candidate step is backtracked until the objective does not
// increase, so the recorded objective sequence is non-increasing. A weight
// assignment that reproduces itself after a full step is a fixed point and
// therefore the exact minimizer of this smooth convex objective.
IrlsFit irls_expectile(const double* y, int n, const double* c,
                       const double* s, int p, double alpha,
                       const IrlsOptions& opts,
                       std::vector<double>* trace = nullptr);

}  // namespace epgram::detail
