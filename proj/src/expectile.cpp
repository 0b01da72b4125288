#include "epgram/expectile.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "irls.hpp"
#include "trig_design.hpp"

namespace epgram {

double expectile_loss(double u, ExpectileLevel alpha) {
  double a = alpha.value();
  double w = (u >= 0.0) ? a : 1.0 - a;
  return w * u * u;
}

double expectile_loss_derivative(double u, ExpectileLevel alpha) {
  double a = alpha.value();
  double w = (u >= 0.0) ? a : 1.0 - a;
  return 2.0 * w * u;
}

namespace detail {
namespace {

struct PassResult {
  double objective = 0.0;
  double sums[9] = {0};  // packed symmetric X'WX
  double rhs[3] = {0};
};

// One sweep: objective at beta, residual-sign vector, and the weighted
// normal equations implied by those signs.
template <int P>
PassResult analyze(const double* y, int n, const double* c, const double* s,
                   const double* beta, double wpos, double wneg,
                   unsigned char* signs) {
  PassResult out;
  double obj = 0.0;
  double s00 = 0, s01 = 0, s02 = 0, s11 = 0, s12 = 0, s22 = 0;
  double b0 = 0, b1 = 0, b2 = 0;
  for (int t = 0; t < n; ++t) {
    double pred = beta[0];
    double ct = 0.0, st = 0.0;
    if constexpr (P >= 2) {
      ct = c[t];
      pred += beta[1] * ct;
    }
    if constexpr (P == 3) {
      st = s[t];
      pred += beta[2] * st;
    }
    double r = y[t] - pred;
    bool nonneg = (r >= 0.0);
    signs[t] = nonneg ? 1 : 0;
    double w = nonneg ? wpos : wneg;
    obj += w * r * r;
    double wy = w * y[t];
    s00 += w;
    b0 += wy;
    if constexpr (P >= 2) {
      double wc = w * ct;
      s01 += wc;
      s11 += wc * ct;
      b1 += wy * ct;
      if constexpr (P == 3) {
        double ws = w * st;
        s02 += ws;
        s12 += wc * st;
        s22 += ws * st;
        b2 += wy * st;
      }
    }
  }
  out.objective = obj;
  if constexpr (P == 1) {
    out.sums[0] = s00;
    out.rhs[0] = b0;
  } else if constexpr (P == 2) {
    out.sums[0] = s00;
    out.sums[1] = s01;
    out.sums[2] = s01;
    out.sums[3] = s11;
    out.rhs[0] = b0;
    out.rhs[1] = b1;
  } else {
    double* m = out.sums;
    m[0] = s00; m[1] = s01; m[2] = s02;
    m[3] = s01; m[4] = s11; m[5] = s12;
    m[6] = s02; m[7] = s12; m[8] = s22;
    out.rhs[0] = b0;
    out.rhs[1] = b1;
    out.rhs[2] = b2;
  }
  return out;
}

PassResult analyze_p(int p, const double* y, int n, const double* c,
                     const double* s, const double* beta, double wpos,
                     double wneg, unsigned char* signs) {
  switch (p) {
    case 1: return analyze<1>(y, n, c, s, beta, wpos, wneg, signs);
    case 2: return analyze<2>(y, n, c, s, beta, wpos, wneg, signs);
    default: return analyze<3>(y, n, c, s, beta, wpos, wneg, signs);
  }
}

// Closed-form OLS start; the trigonometric columns are orthogonal at
// Fourier frequencies.
void ols_start(const double* y, int n, const double* c, const double* s,
               int p, double* beta) {
  double sy = 0;
  for (int t = 0; t < n; ++t) sy += y[t];
  beta[0] = sy / n;
  beta[1] = beta[2] = 0.0;
  if (p >= 2) {
    double syc = 0;
    for (int t = 0; t < n; ++t) syc += y[t] * c[t];
    // sum c^2 is n/2 inside (0,pi) and n at the Nyquist frequency
    beta[1] = (p == 3) ? 2.0 * syc / n : syc / n;
  }
  if (p == 3) {
    double sys = 0;
    for (int t = 0; t < n; ++t) sys += y[t] * s[t];
    beta[2] = 2.0 * sys / n;
  }
}

}  // namespace

IrlsFit irls_expectile(const double* y, int n, const double* c,
                       const double* s, int p, double alpha,
                       const IrlsOptions& opts, std::vector<double>* trace) {
  if (n < p) throw DegenerateDesign("fewer observations than regressors");
  const double wpos = alpha;
  const double wneg = 1.0 - alpha;

  IrlsFit fit;
  fit.p = p;
  ols_start(y, n, c, s, p, fit.beta);

  std::vector<unsigned char> signs(n), cand_signs(n);
  PassResult cur = analyze_p(p, y, n, c, s, fit.beta, wpos, wneg, signs.data());
  if (trace) trace->push_back(cur.objective);

  for (int it = 1; it <= opts.max_iterations; ++it) {
    double cand[3];
    double m[9];
    std::memcpy(m, cur.sums, sizeof(m));
    if (!solve_spd(p, m, cur.rhs, cand)) {
      throw DegenerateDesign("weighted normal equations are singular");
    }
    fit.iterations = it;

    bool full_step = true;
    PassResult next =
        analyze_p(p, y, n, c, s, cand, wpos, wneg, cand_signs.data());
    for (int back = 0; next.objective > cur.objective && back < 60; ++back) {
      full_step = false;
      for (int j = 0; j < p; ++j) cand[j] = 0.5 * (fit.beta[j] + cand[j]);
      next = analyze_p(p, y, n, c, s, cand, wpos, wneg, cand_signs.data());
    }
    if (next.objective > cur.objective) {
      // No descent representable in floating point: already at the optimum.
      fit.converged = true;
      break;
    }

    double decrease = cur.objective - next.objective;
    bool fixed_point =
        full_step && std::memcmp(signs.data(), cand_signs.data(), n) == 0;
    std::memcpy(fit.beta, cand, sizeof(cand));
    signs.swap(cand_signs);
    cur = next;
    if (trace) trace->push_back(cur.objective);
    if (fixed_point || decrease <= opts.objective_tol * (1.0 + cur.objective)) {
      fit.converged = true;
      break;
    }
  }
  fit.objective = cur.objective;
  return fit;
}

}  // namespace detail

double scalar_expectile(const TimeSeries& y, ExpectileLevel alpha,
                        const IrlsOptions& opts) {
  auto fit = detail::irls_expectile(y.values().data(),
                                    static_cast<int>(y.size()), nullptr,
                                    nullptr, 1, alpha.value(), opts);
  return fit.beta[0];
}

TrigFit trig_expectile_fit(const TimeSeries& y, double omega,
                           ExpectileLevel alpha, const IrlsOptions& opts) {
  const int n = static_cast<int>(y.size());
  const int nu = detail::omega_to_index(omega, n);
  const int p = detail::design_width(nu, n);

  std::vector<double> c, s;
  if (p >= 2) {
    detail::TrigTable table(n);
    table.columns(nu, c, s);
  }

  TrigFit out;
  out.omega = omega;
  out.alpha = alpha.value();
  std::vector<double>* trace = opts.record_trace ? &out.objective_trace : nullptr;
  auto fit = detail::irls_expectile(y.values().data(), n, c.data(), s.data(),
                                    p, alpha.value(), opts, trace);
  out.beta.assign(fit.beta, fit.beta + p);
  out.iterations = fit.iterations;
  out.converged = fit.converged;
  out.objective = fit.objective;
  return out;
}

}  // namespace epgram
