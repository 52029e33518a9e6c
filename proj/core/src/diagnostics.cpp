#include "qts/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qts/regress.hpp"
#include "qts/stats.hpp"

namespace qts {

namespace {

// Sample autocorrelations r_0..r_max, biased convention.
std::vector<double> sample_acf(std::span<const double> x, int max_lag) {
  const auto n = static_cast<int>(x.size());
  const double m = mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - m) * (v - m);
  if (denom <= 0.0) {
    throw std::domain_error("autocorrelation of a constant series");
  }
  std::vector<double> r(max_lag + 1);
  r[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (int t = 0; t + k < n; ++t) num += (x[t] - m) * (x[t + k] - m);
    r[k] = num / denom;
  }
  return r;
}

}  // namespace

std::vector<CorrelogramPoint> acf(const Series& s, int max_lag) {
  if (max_lag < 0) throw std::invalid_argument("acf: max_lag must be >= 0");
  if (max_lag >= static_cast<int>(s.size())) {
    throw std::length_error("acf: max_lag must be < series length");
  }
  auto r = sample_acf(s.values(), max_lag);
  const double bound = 1.96 / std::sqrt(static_cast<double>(s.size()));
  std::vector<CorrelogramPoint> out(r.size());
  for (int k = 0; k <= max_lag; ++k) out[k] = {k, r[k], bound};
  return out;
}

std::vector<CorrelogramPoint> pacf(const Series& s, int max_lag) {
  if (max_lag < 1) throw std::invalid_argument("pacf: max_lag must be >= 1");
  if (2 * max_lag >= static_cast<int>(s.size())) {
    throw std::length_error("pacf: max_lag must be < n/2");
  }
  auto r = sample_acf(s.values(), max_lag);
  const double bound = 1.96 / std::sqrt(static_cast<double>(s.size()));

  // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
  std::vector<CorrelogramPoint> out;
  out.push_back({0, 1.0, bound});
  std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
  for (int k = 1; k <= max_lag; ++k) {
    double num = r[k];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= prev[j] * r[k - j];
      den -= prev[j] * r[j];
    }
    const double pk = den != 0.0 ? num / den : 0.0;
    phi[k] = pk;
    for (int j = 1; j < k; ++j) phi[j] = prev[j] - pk * prev[k - j];
    prev = phi;
    out.push_back({k, pk, bound});
  }
  return out;
}

TestResult ljung_box(const Series& residuals, int lags, int fitted_params) {
  const auto n = static_cast<int>(residuals.size());
  if (lags <= fitted_params) {
    throw std::invalid_argument(
        "ljung_box: lags (" + std::to_string(lags) +
        ") must exceed fitted parameter count (" +
        std::to_string(fitted_params) + ")");
  }
  if (lags >= n) throw std::length_error("ljung_box: lags must be < n");

  auto r = sample_acf(residuals.values(), lags);
  double q = 0.0;
  for (int k = 1; k <= lags; ++k) q += r[k] * r[k] / (n - k);
  q *= static_cast<double>(n) * (n + 2);

  const int dof = lags - fitted_params;
  TestResult t;
  t.test = "ljung_box";
  t.statistic = q;
  t.p_value = chi_squared_sf(q, dof);
  t.context = dof;
  t.reject_at_5pct = t.p_value < 0.05;
  return t;
}

TestResult jarque_bera(const Series& residuals) {
  const auto n = static_cast<double>(residuals.size());
  if (n < 8) throw std::length_error("jarque_bera: n must be >= 8");
  const double s = skewness(residuals.values());
  const double k = kurtosis(residuals.values());
  const double jb = n / 6.0 * (s * s + (k - 3.0) * (k - 3.0) / 4.0);

  TestResult t;
  t.test = "jarque_bera";
  t.statistic = jb;
  t.p_value = chi_squared_sf(jb, 2);
  t.context = static_cast<int>(n);
  t.reject_at_5pct = t.p_value < 0.05;
  return t;
}

TestResult shapiro_wilk(const Series& residuals) {
  const auto n = static_cast<int>(residuals.size());
  if (n < 3 || n > 5000) {
    throw std::length_error("shapiro_wilk: n must be in [3, 5000]");
  }
  std::vector<double> x(residuals.values().begin(), residuals.values().end());
  std::sort(x.begin(), x.end());
  if (x.back() <= x.front()) {
    throw std::domain_error("shapiro_wilk: zero-variance input");
  }

  // Expected normal order statistics (Blom approximation).
  std::vector<double> m(n);
  double summ2 = 0.0;
  for (int i = 0; i < n; ++i) {
    m[i] = normal_quantile((i + 1 - 0.375) / (n + 0.25));
    summ2 += m[i] * m[i];
  }
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(static_cast<double>(n));

  // Royston's polynomial corrections to the two largest weights.
  auto poly = [](const double* c, int order, double x_) {
    double acc = 0.0;
    for (int i = order; i >= 1; --i) acc = (acc + c[i - 1]) * x_;
    return acc;
  };
  static const double c1[] = {0.221157, -0.147981, -2.071190, 4.434685,
                              -2.706056};
  static const double c2[] = {0.042981, -0.293762, -1.752461, 5.682633,
                              -3.582633};

  const int half = n / 2;
  std::vector<double> a(half);  // a[j] multiplies x_(n-j) - x_(j+1)
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    const double a1 = poly(c1, 5, rsn) + m[n - 1] / ssumm2;
    if (n > 5) {
      const double a2 = poly(c2, 5, rsn) + m[n - 2] / ssumm2;
      const double fac =
          std::sqrt((summ2 - 2.0 * m[n - 1] * m[n - 1] -
                     2.0 * m[n - 2] * m[n - 2]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[0] = a1;
      a[1] = a2;
      for (int j = 2; j < half; ++j) a[j] = m[n - 1 - j] / fac;
    } else {
      const double fac = std::sqrt((summ2 - 2.0 * m[n - 1] * m[n - 1]) /
                                   (1.0 - 2.0 * a1 * a1));
      a[0] = a1;
      for (int j = 1; j < half; ++j) a[j] = m[n - 1 - j] / fac;
    }
  }

  const double xbar = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - xbar) * (v - xbar);
  double b = 0.0;
  for (int j = 0; j < half; ++j) b += a[j] * (x[n - 1 - j] - x[j]);
  const double w = std::min(b * b / ss, 1.0);

  double p;
  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;    // 6/pi
    constexpr double stqr = 1.04719755119660;   // asin(sqrt(3/4))
    p = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
  } else if (1.0 - w < std::numeric_limits<double>::epsilon()) {
    p = 1.0;
  } else if (n <= 11) {
    const double nd = n;
    const double gamma = -2.273 + 0.459 * nd;
    const double wt = -std::log(gamma - std::log1p(-w));
    const double mu = 0.5440 - 0.39978 * nd + 0.025054 * nd * nd -
                      0.0006714 * nd * nd * nd;
    const double sigma = std::exp(1.3822 - 0.77857 * nd + 0.062767 * nd * nd -
                                  0.0020322 * nd * nd * nd);
    p = 1.0 - normal_cdf((wt - mu) / sigma);
  } else {
    const double ln = std::log(static_cast<double>(n));
    const double wt = std::log1p(-w);
    const double mu = -1.5861 - 0.31082 * ln - 0.083751 * ln * ln +
                      0.0038915 * ln * ln * ln;
    const double sigma = std::exp(-0.4803 - 0.082676 * ln + 0.0030302 * ln * ln);
    p = 1.0 - normal_cdf((wt - mu) / sigma);
  }

  TestResult t;
  t.test = "shapiro_wilk";
  t.statistic = w;
  t.p_value = p;
  t.context = n;
  t.reject_at_5pct = p < 0.05;
  return t;
}

TestResult white_test(const Series& residuals, const Frame& regressors,
                      bool cross_products) {
  const QuarterDate lo = std::max(residuals.start(), regressors.start());
  const QuarterDate hi = std::min(residuals.end(), regressors.end());
  if (lo > hi) {
    throw std::out_of_range("white_test: residuals (" + residuals.start().str() +
                            ".." + residuals.end().str() +
                            ") and regressors (" + regressors.start().str() +
                            ".." + regressors.end().str() + ") do not overlap");
  }
  const int n = hi.minus(lo) + 1;
  const auto k = static_cast<int>(regressors.n_columns());

  Eigen::VectorXd e2(n);
  for (int i = 0; i < n; ++i) {
    const double e = residuals.at(lo.plus(i));
    e2(i) = e * e;
  }

  // Auxiliary design: levels, squares, cross products.
  std::vector<std::pair<std::string, Eigen::VectorXd>> aux;
  Eigen::MatrixXd Z(n, k);
  {
    int c = 0;
    for (const auto& col : regressors.columns()) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v(i) = col.at(lo.plus(i));
      Z.col(c++) = v;
      aux.emplace_back(col.name(), v);
    }
  }
  for (int j = 0; j < k; ++j) {
    aux.emplace_back(regressors.columns()[j].name() + "^2",
                     Z.col(j).cwiseProduct(Z.col(j)));
  }
  if (cross_products) {
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        aux.emplace_back(
            regressors.columns()[i].name() + "*" + regressors.columns()[j].name(),
            Z.col(i).cwiseProduct(Z.col(j)));
      }
    }
  }

  Eigen::MatrixXd X(n, 1 + aux.size());
  X.col(0).setOnes();
  for (std::size_t j = 0; j < aux.size(); ++j) X.col(j + 1) = aux[j].second;

  auto keep = independent_columns(X);
  const bool dropped = keep.size() < static_cast<std::size_t>(X.cols());
  if (std::find(keep.begin(), keep.end(), 0) == keep.end()) {
    keep.insert(keep.begin(), 0);  // keep the constant regardless of pivoting
  }
  Eigen::MatrixXd Xr(n, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) Xr.col(j) = X.col(keep[j]);

  const int aux_terms = static_cast<int>(Xr.cols()) - 1;
  if (aux_terms < 1) {
    throw RankError("white_test: auxiliary design reduces to a constant");
  }
  if (n <= static_cast<int>(Xr.cols())) {
    throw std::length_error("white_test: n=" + std::to_string(n) +
                            " too small for " + std::to_string(Xr.cols()) +
                            " auxiliary terms");
  }

  OlsSummary s = ols_fit(e2, Xr);
  const double lm = n * s.r2;

  TestResult t;
  t.test = "white";
  t.statistic = lm;
  t.p_value = chi_squared_sf(lm, aux_terms);
  t.context = aux_terms;
  t.reject_at_5pct = t.p_value < 0.05;
  if (dropped) {
    t.note = "dropped " +
             std::to_string(X.cols() - static_cast<int>(keep.size())) +
             " collinear auxiliary column(s)";
  }
  return t;
}

namespace {

struct MacKinnonSurface {
  // Critical-value response surface: cv = b0 + b1/T + b2/T^2 + b3/T^3.
  double cv1[4], cv5[4], cv10[4];
  // p-value surface, p = Phi(poly(tau)).
  double tau_star, tau_min, tau_max;
  double smallp[3];
  double largep[4];
};

// MacKinnon (1994, 2010) coefficients for a single series, drift / trend.
const MacKinnonSurface kDrift = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
    -1.61, -18.83, 2.74,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368}};

const MacKinnonSurface kTrend = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
    -2.89, -16.18, 0.70,
    {3.2657, 1.6666, 0.064695},
    {2.5261, 0.61654, -0.37956, -0.060285}};

double response_surface(const double b[4], double T) {
  return b[0] + b[1] / T + b[2] / (T * T) + b[3] / (T * T * T);
}

double mackinnon_pvalue(double tau, const MacKinnonSurface& s) {
  if (tau <= s.tau_min) return 0.0;
  if (tau >= s.tau_max) return 1.0;
  double z;
  if (tau <= s.tau_star) {
    z = s.smallp[0] + s.smallp[1] * tau + s.smallp[2] * tau * tau;
  } else {
    z = s.largep[0] + tau * (s.largep[1] + tau * (s.largep[2] + tau * s.largep[3]));
  }
  return normal_cdf(z);
}

struct AdfRegression {
  double tau = 0;
  double aic = 0;
  int n_eff = 0;
};

// ADF regression with k augmentation lags on rows t = start_row..n-1 of the
// original series (0-based; start_row >= k+1).
AdfRegression adf_regression(std::span<const double> x, int k, int start_row,
                             bool trend) {
  const auto n = static_cast<int>(x.size());
  const int rows = n - start_row;
  const int cols = 2 + (trend ? 1 : 0) + k;
  Eigen::VectorXd y(rows);
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const int t = start_row + i;
    y(i) = x[t] - x[t - 1];
    int c = 0;
    X(i, c++) = 1.0;
    if (trend) X(i, c++) = static_cast<double>(t);
    X(i, c++) = x[t - 1];
    for (int j = 1; j <= k; ++j) X(i, c++) = x[t - j] - x[t - j - 1];
  }
  OlsSummary s = ols_fit(y, X);
  const int gamma_idx = trend ? 2 : 1;
  return {s.t_values(gamma_idx), s.aic, rows};
}

}  // namespace

TestResult adf_test(const Series& s, AdfDeterministic deterministic,
                    AdfLagRule lag_rule) {
  const auto n = static_cast<int>(s.size());
  const int rule_k = lag_rule.lags;
  if (rule_k < 0) throw std::invalid_argument("adf_test: negative lag");
  if (n <= 4 * (rule_k + 3)) {
    throw std::length_error("adf_test: series of length " + std::to_string(n) +
                            " too short for lag rule k=" +
                            std::to_string(rule_k));
  }
  const bool trend = deterministic == AdfDeterministic::Trend;
  const auto x = s.values();

  int k = rule_k;
  if (lag_rule.kind == AdfLagRule::Kind::InfoCriterion) {
    // Candidates share the window implied by the deepest lag so their AICs
    // are comparable; the winner is refitted on its own full window below.
    double best = std::numeric_limits<double>::infinity();
    k = 0;
    for (int cand = 0; cand <= rule_k; ++cand) {
      const double aic = adf_regression(x, cand, rule_k + 1, trend).aic;
      if (aic < best) {
        best = aic;
        k = cand;
      }
    }
  }

  const AdfRegression reg = adf_regression(x, k, k + 1, trend);
  const MacKinnonSurface& surf = trend ? kTrend : kDrift;
  const auto T = static_cast<double>(reg.n_eff);
  const double cv1 = response_surface(surf.cv1, T);
  const double cv5 = response_surface(surf.cv5, T);
  const double cv10 = response_surface(surf.cv10, T);

  TestResult t;
  t.test = trend ? "adf_trend" : "adf_drift";
  t.statistic = reg.tau;
  t.p_value = mackinnon_pvalue(reg.tau, surf);
  t.context = k;
  t.reject_at_5pct = reg.tau < cv5;
  char buf[96];
  std::snprintf(buf, sizeof buf, "cv1=%.4f cv5=%.4f cv10=%.4f n_eff=%d", cv1,
                cv5, cv10, reg.n_eff);
  t.note = buf;
  return t;
}

}  // namespace qts
