#pragma once

#include <variant>

#include "epgram/rng.hpp"
#include "epgram/types.hpp"

namespace epgram {

/// AR(2) with phi1 = 2r*cos(omega_c), phi2 = -r^2 and Gaussian innovations.
/// |r| < 1 keeps the characteristic roots outside the unit circle.
struct Ar2Params {
  double r = 0.6;
  double omega_c = 0.0;  // radians per sample
  double innovation_sd = 1.0;

  double phi1() const;
  double phi2() const;
  void validate() const;
};

/// Product model: y_t = (b0 + b1*cos(omega0 t) + b2*sin(omega1 t)) * x_t
/// with an AR(2) carrier x. The modulation is deterministic, so the hidden
/// frequencies enter the variance of y but not its mean.
struct HiddenPeriodicityParams {
  double b0 = 1.0;
  double b1 = 0.9;
  double b2 = 1.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  Ar2Params carrier;

  void validate() const { carrier.validate(); }
};

/// Nonlinear mixture of a lowpass AR(1), a highpass AR(1) and a bandpass
/// lag-2 AR, combined through two piecewise-linear mixing functions.
struct MixtureParams {
  double ar1_coef = 0.8;
  double ar2_coef = -0.75;
  double ar3_lag2_coef = -0.81;

  // W1: w1_left below x0, w1_right above x1, linear in between. W2 alike.
  double w1_x0 = -0.8, w1_x1 = 0.8, w1_left = 0.9, w1_right = 0.2;
  double w2_x0 = -0.4, w2_x1 = 0.0, w2_left = 0.5, w2_right = 1.0;

  double w1(double x) const;
  double w2(double x) const;
  void validate() const;
};

/// GARCH(1,1): sigma_t^2 = omega + a*y_{t-1}^2 + b*sigma_{t-1}^2,
/// y_t ~ N(0, sigma_t^2). Requires a + b < 1; the recursion starts at the
/// unconditional variance omega/(1-a-b).
struct Garch11Params {
  double omega = 1e-6;
  double a = 0.49;
  double b = 0.49;

  double unconditional_variance() const;
  void validate() const;
};

using SimModel =
    std::variant<Ar2Params, HiddenPeriodicityParams, MixtureParams, Garch11Params>;

inline constexpr int kDefaultBurnIn = 500;

TimeSeries gen_ar2(const Ar2Params& m, int n, Rng& rng,
                   int burn_in = kDefaultBurnIn);
TimeSeries gen_hidden(const HiddenPeriodicityParams& m, int n, Rng& rng,
                      int burn_in = kDefaultBurnIn);
TimeSeries gen_mixture(const MixtureParams& m, int n, Rng& rng,
                       int burn_in = kDefaultBurnIn);
TimeSeries gen_garch(const Garch11Params& m, int n, Rng& rng,
                     int burn_in = kDefaultBurnIn);

TimeSeries generate(const SimModel& model, int n, Rng& rng,
                    int burn_in = kDefaultBurnIn);

}  // namespace epgram
