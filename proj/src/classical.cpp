#include "epgram/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "epgram/expectile.hpp"
#include "trig_design.hpp"

namespace epgram {

PeriodogramMatrix ordinary_periodogram(const TimeSeries& y) {
  const int n = static_cast<int>(y.size());
  PeriodogramMatrix pm;
  pm.grid = FrequencyGrid::fourier(n);
  pm.levels = {0.5};

  const TimeSeries data = y.demeaned();
  const double* yv = data.values().data();

  detail::TrigTable table(n);
  std::vector<double> row(pm.grid.size());
  for (std::size_t f = 0; f < pm.grid.size(); ++f) {
    const int nu = pm.grid.indices[f];
    double sc = 0.0, ss = 0.0;
    int k = 0;
    for (int t = 0; t < n; ++t) {
      k += nu;
      if (k >= n) k -= n;
      sc += yv[t] * table.cs[k];
      ss += yv[t] * table.sn[k];
    }
    row[f] = (sc * sc + ss * ss) / n;
  }
  pm.rows.push_back(std::move(row));
  pm.converged.assign(1, std::vector<bool>(pm.grid.size(), true));
  return pm;
}

double check_loss(double u, QuantileLevel theta) {
  double th = theta.value();
  return (u >= 0.0) ? th * u : -(1.0 - th) * u;
}

namespace {

// ---------------------------------------------------------------------
// Trigonometric quantile regression: smoothed-check IRLS warm start, then
// exact pivoting on the residual-interpolation bases. At a basis B the
// multipliers lambda solve X_B' lambda = -sum_{t not in B} psi(r_t) x_t;
// the vertex is optimal iff every lambda_b lies in [theta-1, theta].
// ---------------------------------------------------------------------

struct QrProblem {
  const double* y;
  const double* c;  // may be null when p == 1
  const double* s;  // may be null when p <= 2
  int n;
  int p;
  double theta;

  double regressor(int t, int j) const {
    if (j == 0) return 1.0;
    if (j == 1) return c[t];
    return s[t];
  }
  double predict(int t, const double* beta) const {
    double v = beta[0];
    if (p >= 2) v += beta[1] * c[t];
    if (p == 3) v += beta[2] * s[t];
    return v;
  }
  double objective(const double* beta) const {
    double obj = 0.0;
    for (int t = 0; t < n; ++t) {
      double r = y[t] - predict(t, beta);
      obj += (r >= 0.0) ? theta * r : -(1.0 - theta) * r;
    }
    return obj;
  }
  // Derivative convention at a zero residual: psi(0) = theta.
  double psi(double r) const { return (r >= 0.0) ? theta : theta - 1.0; }
};

void qr_warm_start(const QrProblem& q, double* beta) {
  const int n = q.n;
  const int p = q.p;
  // OLS start (orthogonal trigonometric columns).
  double sy = 0.0, syc = 0.0, sys = 0.0;
  for (int t = 0; t < n; ++t) {
    sy += q.y[t];
    if (p >= 2) syc += q.y[t] * q.c[t];
    if (p == 3) sys += q.y[t] * q.s[t];
  }
  beta[0] = sy / n;
  beta[1] = (p == 3) ? 2.0 * syc / n : (p == 2 ? syc / n : 0.0);
  beta[2] = (p == 3) ? 2.0 * sys / n : 0.0;

  double scale = 0.0;
  for (int t = 0; t < n; ++t) {
    double r = q.y[t] - q.predict(t, beta);
    scale += r * r;
  }
  scale = std::sqrt(scale / n) + 1e-30;

  double floor = 1e-3 * scale;
  for (int it = 0; it < 12; ++it) {
    double a[9] = {0}, b[3] = {0}, x[3] = {0};
    for (int t = 0; t < n; ++t) {
      double r = q.y[t] - q.predict(t, beta);
      double w = ((r >= 0.0) ? q.theta : 1.0 - q.theta) / std::max(std::abs(r), floor);
      double xt[3] = {1.0, p >= 2 ? q.c[t] : 0.0, p == 3 ? q.s[t] : 0.0};
      for (int i = 0; i < p; ++i) {
        b[i] += w * q.y[t] * xt[i];
        for (int j = 0; j <= i; ++j) a[i * p + j] += w * xt[i] * xt[j];
      }
    }
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) a[i * p + j] = a[j * p + i];
    if (!detail::solve_spd(p, a, b, x)) break;
    std::memcpy(beta, x, sizeof(double) * p);
    if (it % 4 == 3) floor = std::max(floor * 1e-2, 1e-9 * scale);
  }
}

// Pick p rows with the smallest warm-start residuals that form a
// nonsingular basis.
bool qr_select_basis(const QrProblem& q, const double* beta, int* basis) {
  const int n = q.n;
  const int p = q.p;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> absr(n);
  for (int t = 0; t < n; ++t)
    absr[t] = std::abs(q.y[t] - q.predict(t, beta));
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return absr[a] < absr[b]; });

  double ortho[3][3];  // orthonormalized accepted rows
  int count = 0;
  for (int idx : order) {
    double v[3];
    for (int j = 0; j < p; ++j) v[j] = q.regressor(idx, j);
    for (int r = 0; r < count; ++r) {
      double dot = 0.0;
      for (int j = 0; j < p; ++j) dot += v[j] * ortho[r][j];
      for (int j = 0; j < p; ++j) v[j] -= dot * ortho[r][j];
    }
    double nv = 0.0;
    for (int j = 0; j < p; ++j) nv += v[j] * v[j];
    nv = std::sqrt(nv);
    if (nv > 1e-8) {
      for (int j = 0; j < p; ++j) ortho[count][j] = v[j] / nv;
      basis[count++] = idx;
      if (count == p) return true;
    }
  }
  return false;
}

bool qr_solve_basis(const QrProblem& q, const int* basis, double* beta) {
  const int p = q.p;
  double a[9], b[3];
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) a[i * p + j] = q.regressor(basis[i], j);
    b[i] = q.y[basis[i]];
  }
  return detail::solve_general(p, a, b, beta);
}

struct PivotOutcome {
  bool optimal = false;
  bool failed = false;
  int pivots = 0;
};

struct Crossing {
  double sigma;
  double jump;
  int index;
  bool operator<(const Crossing& o) const { return sigma < o.sigma; }
};

PivotOutcome qr_pivot(const QrProblem& q, int* basis, double* beta,
                      int max_pivots) {
  const int n = q.n;
  const int p = q.p;
  const double dual_tol = 1e-9;
  PivotOutcome out;

  if (!qr_solve_basis(q, basis, beta)) {
    out.failed = true;
    return out;
  }

  // Residuals this close to zero sit on a kink: their subgradient choice is
  // free, so edge slopes must be corrected before a direction counts as
  // improving. Interpolated duplicates of basis rows land here.
  double rscale = 0.0;
  for (int t = 0; t < n; ++t) rscale = std::max(rscale, std::abs(q.y[t]));
  const double zero_tol = 1e-12 * (1.0 + rscale);

  std::vector<double> resid(n);
  std::vector<Crossing> cross;
  double prev_obj = q.objective(beta);
  int stalls = 0;
  for (;;) {
    for (int t = 0; t < n; ++t) resid[t] = q.y[t] - q.predict(t, beta);
    for (int i = 0; i < p; ++i) resid[basis[i]] = 0.0;

    double g[3] = {0, 0, 0};
    for (int t = 0; t < n; ++t) {
      bool in_basis = false;
      for (int i = 0; i < p; ++i) in_basis |= (basis[i] == t);
      if (in_basis) continue;
      double ps = q.psi(resid[t]);
      g[0] += ps;
      if (p >= 2) g[1] += ps * q.c[t];
      if (p == 3) g[2] += ps * q.s[t];
    }

    // lambda solves X_B' lambda = -g.
    double at[9], rhs[3], lambda[3];
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) at[i * p + j] = q.regressor(basis[j], i);
      rhs[i] = -g[i];
    }
    if (!detail::solve_general(p, at, rhs, lambda)) {
      out.failed = true;
      return out;
    }

    // Try violated multipliers in order of decreasing violation; a vertex
    // with no strictly improving edge is optimal.
    int order[3];
    double violation[3];
    for (int i = 0; i < p; ++i) {
      order[i] = i;
      violation[i] = std::max(lambda[i] - q.theta, (q.theta - 1.0) - lambda[i]);
    }
    std::sort(order, order + p,
              [&](int a2, int b2) { return violation[a2] > violation[b2]; });

    bool pivoted = false;
    for (int oi = 0; oi < p && !pivoted; ++oi) {
      const int b = order[oi];
      if (violation[b] <= dual_tol) break;
      const bool upper = lambda[b] > q.theta;  // residual must turn positive

      // Edge direction u with x_b'u = 1, x_other'u = 0.
      double a[9], e[3] = {0, 0, 0}, u[3];
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) a[i * p + j] = q.regressor(basis[i], j);
      e[b] = 1.0;
      if (!detail::solve_general(p, a, e, u)) {
        out.failed = true;
        return out;
      }

      double slope = upper ? (q.theta - lambda[b])
                           : (1.0 - q.theta) + lambda[b];
      cross.clear();
      for (int t = 0; t < n; ++t) {
        bool in_basis = false;
        for (int i = 0; i < p; ++i) in_basis |= (basis[i] == t);
        if (in_basis) continue;
        double at_ = u[0];
        if (p >= 2) at_ += q.c[t] * u[1];
        if (p == 3) at_ += q.s[t] * u[2];
        double drds = upper ? at_ : -at_;  // d r_t / d sigma
        if (drds == 0.0) continue;
        if (std::abs(resid[t]) <= zero_tol) {
          // Already at a kink: the dual used the subgradient of the raw
          // sign, but an infinitesimal step moves the residual to the side
          // of drds. Account for the flip immediately; it only ever raises
          // the slope.
          double used = q.psi(resid[t]);
          double eff = (drds > 0.0) ? q.theta : q.theta - 1.0;
          slope += (eff - used) * drds;
          continue;
        }
        double sigma = -resid[t] / drds;
        if (sigma > 0.0) cross.push_back({sigma, std::abs(at_), t});
      }
      if (slope >= -1e-12) continue;  // flat or uphill edge: not improving

      std::sort(cross.begin(), cross.end());
      int entering = -1;
      double total_jump = 0.0;
      for (const auto& c : cross) {
        slope += c.jump;
        total_jump += c.jump;
        if (slope >= 0.0) {
          entering = c.index;
          break;
        }
      }
      if (entering < 0) {
        // The objective is coercive, so an exhausted walk can only mean the
        // edge is flat to rounding precision (a tied face); anything beyond
        // that tolerance is a genuine failure.
        if (slope >= -1e-9 * (1.0 + total_jump)) continue;
        out.failed = true;
        return out;
      }
      if (out.pivots >= max_pivots) {
        out.failed = true;
        return out;
      }
      basis[b] = entering;
      ++out.pivots;
      if (!qr_solve_basis(q, basis, beta)) {
        out.failed = true;
        return out;
      }
      pivoted = true;
    }
    if (!pivoted) {
      out.optimal = true;
      return out;
    }
    // Pivots that fail to decrease the objective are walking a tied face
    // (exactly degenerate data); a convex piecewise-linear objective makes
    // such a vertex optimal to rounding precision.
    double obj = q.objective(beta);
    if (prev_obj - obj <= 1e-12 * (1.0 + std::abs(obj))) {
      if (++stalls > p) {
        out.optimal = true;
        return out;
      }
    } else {
      stalls = 0;
    }
    prev_obj = std::min(prev_obj, obj);
  }
}

QuantileFit qr_fit(const QrProblem& q, double omega, const int* basis_hint) {
  QuantileFit fit;
  fit.omega = omega;
  fit.theta = q.theta;

  if (q.n < q.p) throw DegenerateDesign("fewer observations than regressors");

  double beta[3] = {0, 0, 0};
  int basis[3] = {0, 1, 2};
  bool have_basis = false;
  if (basis_hint) {
    std::memcpy(basis, basis_hint, sizeof(int) * q.p);
    have_basis = qr_solve_basis(q, basis, beta);
  }
  if (!have_basis) {
    qr_warm_start(q, beta);
    if (!qr_select_basis(q, beta, basis)) {
      throw DegenerateDesign("no nonsingular interpolation basis exists");
    }
  }

  auto outcome = qr_pivot(q, basis, beta, 60 + 10 * q.n);
  fit.beta.assign(beta, beta + q.p);
  fit.converged = outcome.optimal && !outcome.failed;
  fit.pivots = outcome.pivots;
  fit.objective = q.objective(beta);
  fit.basis[0] = basis[0];
  fit.basis[1] = basis[1];
  fit.basis[2] = basis[2];
  return fit;
}

}  // namespace

QuantileFit trig_quantile_fit(const TimeSeries& y, double omega,
                              QuantileLevel theta) {
  const int n = static_cast<int>(y.size());
  const int nu = detail::omega_to_index(omega, n);
  const int p = detail::design_width(nu, n);

  std::vector<double> c, s;
  if (p >= 2) {
    detail::TrigTable table(n);
    table.columns(nu, c, s);
  }
  QrProblem q{y.values().data(), c.data(), s.data(), n, p, theta.value()};
  return qr_fit(q, omega, nullptr);
}

PeriodogramMatrix quantile_periodogram(const TimeSeries& y,
                                       const std::vector<QuantileLevel>& thetas,
                                       bool demean) {
  if (thetas.empty()) throw ConfigError("level list must not be empty");
  std::vector<double> levels;
  levels.reserve(thetas.size());
  for (const auto& t : thetas) levels.push_back(t.value());
  std::sort(levels.begin(), levels.end());
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] == levels[i - 1]) throw ConfigError("levels must be distinct");
  }

  const int n = static_cast<int>(y.size());
  PeriodogramMatrix pm;
  pm.grid = FrequencyGrid::fourier(n);
  pm.levels = levels;
  pm.rows.assign(levels.size(), std::vector<double>(pm.grid.size(), 0.0));
  pm.converged.assign(levels.size(), std::vector<bool>(pm.grid.size(), true));

  const TimeSeries data = demean ? y.demeaned() : y;
  detail::TrigTable table(n);
  std::vector<double> c, s;
  for (std::size_t f = 0; f < pm.grid.size(); ++f) {
    const int nu = pm.grid.indices[f];
    const int p = detail::design_width(nu, n);
    table.columns(nu, c, s);
    QuantileFit prev;
    for (std::size_t li = 0; li < levels.size(); ++li) {
      QrProblem q{data.values().data(), c.data(), s.data(), n, p, levels[li]};
      // Sweep levels reusing the previous vertex as the starting basis.
      const int* hint = (li > 0 && prev.converged) ? prev.basis : nullptr;
      QuantileFit fit = qr_fit(q, pm.grid.omegas[f], hint);
      double ord = (p == 3)
          ? 0.25 * n * (fit.beta[1] * fit.beta[1] + fit.beta[2] * fit.beta[2])
          : static_cast<double>(n) * fit.beta[1] * fit.beta[1];
      pm.rows[li][f] = ord;
      pm.converged[li][f] = fit.converged;
      prev = fit;
    }
  }
  return pm;
}

double empirical_quantile(std::vector<double> values, double theta) {
  if (values.empty()) throw InputError("empty sample");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ConfigError("quantile level must lie in (0,1)");
  }
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  double h = (static_cast<double>(m) - 1.0) * theta;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo >= m - 1) return values[m - 1];
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<std::uint8_t> level_crossing_process(const TimeSeries& y,
                                                 QuantileLevel theta) {
  double q = empirical_quantile(y.values(), theta.value());
  std::vector<std::uint8_t> out(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) out[t] = y.values()[t] > q ? 1 : 0;
  return out;
}

std::vector<double> asecp(const TimeSeries& y, ExpectileLevel alpha) {
  double mu = scalar_expectile(y, alpha);
  std::vector<double> out(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    out[t] = expectile_loss_derivative(y.values()[t] - mu, alpha);
  }
  return out;
}

}  // namespace epgram
