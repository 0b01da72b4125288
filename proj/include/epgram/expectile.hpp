#pragma once

#include <vector>

#include "epgram/types.hpp"

namespace epgram {

struct IrlsOptions {
  int max_iterations = 100;
  // Stop when the objective decrease drops below objective_tol*(1+objective).
  double objective_tol = 1e-12;
  bool record_trace = false;
};

/// Solution of one trigonometric expectile regression. `beta` holds
/// (intercept, cosine, sine) for omega in (0,pi), (intercept, cosine) at
/// omega = pi, and the intercept alone at omega = 0.
struct TrigFit {
  double omega = 0.0;
  double alpha = 0.5;
  std::vector<double> beta;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<double> objective_trace;  // filled when record_trace is set
};

/// Asymmetric squared loss: alpha*u^2 for u >= 0, (1-alpha)*u^2 otherwise.
double expectile_loss(double u, ExpectileLevel alpha);

/// Derivative of the loss; continuous at zero.
double expectile_loss_derivative(double u, ExpectileLevel alpha);

/// Minimizer of the summed expectile loss over a constant. Satisfies the
/// empirical normal equation sum_t loss'(y_t - mu) = 0.
double scalar_expectile(const TimeSeries& y, ExpectileLevel alpha,
                        const IrlsOptions& opts = {});

/// Expectile regression on the trigonometric design at a Fourier frequency
/// of the series (or omega = 0), solved by safeguarded iteratively
/// reweighted least squares started at the OLS solution.
TrigFit trig_expectile_fit(const TimeSeries& y, double omega,
                           ExpectileLevel alpha, const IrlsOptions& opts = {});

}  // namespace epgram
