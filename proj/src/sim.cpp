#include "epgram/sim.hpp"

#include <cmath>

namespace epgram {

double Ar2Params::phi1() const { return 2.0 * r * std::cos(omega_c); }
double Ar2Params::phi2() const { return -r * r; }

void Ar2Params::validate() const {
  if (!(r >= 0.0 && r < 1.0)) {
    throw NonStationary("AR(2) modulus r must lie in [0,1)");
  }
  if (!(innovation_sd > 0.0)) {
    throw ConfigError("innovation standard deviation must be positive");
  }
}

double MixtureParams::w1(double x) const {
  if (x < w1_x0) return w1_left;
  if (x > w1_x1) return w1_right;
  return w1_left + (x - w1_x0) / (w1_x1 - w1_x0) * (w1_right - w1_left);
}

double MixtureParams::w2(double x) const {
  if (x < w2_x0) return w2_left;
  if (x > w2_x1) return w2_right;
  return w2_left + (x - w2_x0) / (w2_x1 - w2_x0) * (w2_right - w2_left);
}

void MixtureParams::validate() const {
  if (!(std::abs(ar1_coef) < 1.0 && std::abs(ar2_coef) < 1.0 &&
        std::abs(ar3_lag2_coef) < 1.0)) {
    throw NonStationary("mixture AR coefficients must have modulus < 1");
  }
  if (!(w1_x0 < w1_x1 && w2_x0 < w2_x1)) {
    throw ConfigError("mixing breakpoints must be ordered");
  }
}

double Garch11Params::unconditional_variance() const {
  return omega / (1.0 - a - b);
}

void Garch11Params::validate() const {
  if (!(omega > 0.0 && a >= 0.0 && b >= 0.0)) {
    throw ConfigError("GARCH parameters must be nonnegative with omega > 0");
  }
  if (!(a + b < 1.0)) {
    throw NonStationary("GARCH requires a + b < 1");
  }
}

namespace {
void check_length(int n, int burn_in) {
  if (n < 1) throw ConfigError("series length must be positive");
  if (burn_in < 0) throw ConfigError("burn-in must be nonnegative");
}
}  // namespace

TimeSeries gen_ar2(const Ar2Params& m, int n, Rng& rng, int burn_in) {
  m.validate();
  check_length(n, burn_in);
  const double phi1 = m.phi1();
  const double phi2 = m.phi2();
  std::vector<double> out(n);
  double x1 = 0.0, x2 = 0.0;  // start at zero, discard the burn-in
  for (int t = -burn_in; t < n; ++t) {
    double x = phi1 * x1 + phi2 * x2 + m.innovation_sd * rng.next_gaussian();
    x2 = x1;
    x1 = x;
    if (t >= 0) out[t] = x;
  }
  return TimeSeries(std::move(out));
}

TimeSeries gen_hidden(const HiddenPeriodicityParams& m, int n, Rng& rng,
                      int burn_in) {
  m.validate();
  check_length(n, burn_in);
  TimeSeries x = gen_ar2(m.carrier, n, rng, burn_in);
  std::vector<double> out(n);
  for (int t = 0; t < n; ++t) {
    double tt = static_cast<double>(t + 1);  // modulator clock is t = 1..n
    double a = m.b0 + m.b1 * std::cos(m.omega0 * tt) + m.b2 * std::sin(m.omega1 * tt);
    out[t] = a * x.values()[t];
  }
  return TimeSeries(std::move(out));
}

TimeSeries gen_mixture(const MixtureParams& m, int n, Rng& rng, int burn_in) {
  m.validate();
  check_length(n, burn_in);
  double x1 = 0.0;
  double x2 = 0.0;
  double x3a = 0.0, x3b = 0.0;  // lag-1 and lag-2 states of the third component
  std::vector<double> out(n);
  for (int t = -burn_in; t < n; ++t) {
    // One interleaved stream: three innovations per step, fixed order.
    double w1 = rng.next_gaussian();
    double w2 = rng.next_gaussian();
    double w3 = rng.next_gaussian();
    x1 = m.ar1_coef * x1 + w1;
    x2 = m.ar2_coef * x2 + w2;
    double x3 = m.ar3_lag2_coef * x3b + w3;
    x3b = x3a;
    x3a = x3;
    if (t >= 0) {
      double z = m.w1(x1) * x1 + (1.0 - m.w1(x1)) * x2;
      out[t] = m.w2(z) * z + (1.0 - m.w2(z)) * x3;
    }
  }
  return TimeSeries(std::move(out));
}

TimeSeries gen_garch(const Garch11Params& m, int n, Rng& rng, int burn_in) {
  m.validate();
  check_length(n, burn_in);
  double var = m.unconditional_variance();
  std::vector<double> out(n);
  for (int t = -burn_in; t < n; ++t) {
    double y = std::sqrt(var) * rng.next_gaussian();
    if (t >= 0) out[t] = y;
    var = m.omega + m.a * y * y + m.b * var;
  }
  return TimeSeries(std::move(out));
}

TimeSeries generate(const SimModel& model, int n, Rng& rng, int burn_in) {
  return std::visit(
      [&](const auto& m) -> TimeSeries {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ar2Params>) {
          return gen_ar2(m, n, rng, burn_in);
        } else if constexpr (std::is_same_v<T, HiddenPeriodicityParams>) {
          return gen_hidden(m, n, rng, burn_in);
        } else if constexpr (std::is_same_v<T, MixtureParams>) {
          return gen_mixture(m, n, rng, burn_in);
        } else {
          return gen_garch(m, n, rng, burn_in);
        }
      },
      model);
}

}  // namespace epgram
