#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qts/intercept.hpp"
#include "qts/series.hpp"

namespace qts {

/// ARIMA model description with lag subsets: ar_lags/ma_lags list the
/// active lags (e.g. {1,3}); omitted intermediate lags are constrained to
/// zero. The MA polynomial convention is 1 + theta_1 B + theta_2 B^2 + ...
struct ArimaSpec {
  int d = 0;
  std::vector<int> ar_lags;  // distinct, ascending, within 1..12
  std::vector<int> ma_lags;
  bool intercept = true;

  static ArimaSpec dense(int p, int d, int q, bool intercept = true);

  int max_ar_lag() const { return ar_lags.empty() ? 0 : ar_lags.back(); }
  int max_ma_lag() const { return ma_lags.empty() ? 0 : ma_lags.back(); }
  int max_lag() const { return std::max(max_ar_lag(), max_ma_lag()); }
  int n_coeffs() const {
    return static_cast<int>(ar_lags.size() + ma_lags.size());
  }
  /// Count entering the AIC penalty: coefficients + intercept + sigma2.
  int n_params() const { return n_coeffs() + (intercept ? 1 : 0) + 1; }

  /// True when the lags are contiguous 1..k (full-window block).
  bool ar_dense() const;
  bool ma_dense() const;

  std::string str() const;

  /// Checks lag bounds and the data-length feasibility requirement
  /// n - d > |ar_lags| + |ma_lags| + 2.
  void validate(std::size_t data_length) const;

  bool operator==(const ArimaSpec&) const = default;
};

/// Coefficients aligned with the spec's lag lists; `mean` is the process
/// mean (the value reported as "intercept" in the usual software
/// convention), not the regression constant.
struct ArimaParams {
  std::vector<double> ar;
  std::vector<double> ma;
  double mean = 0;
  double sigma2 = 1;
};

struct ForecastPoint {
  double mean = 0;
  double std_error = 0;
};

struct ArimaFit {
  ArimaSpec spec;
  ArimaParams params;
  double loglik = 0;
  double aic = 0;
  /// One-step standardized Kalman innovations rescaled to data units,
  /// dated on the differenced scale.
  Series residuals;
  bool converged = false;
  int n_obs = 0;  // observations entering the likelihood (after differencing)
  QuarterDate data_end;

  // Forecasting state on the differenced scale.
  Eigen::VectorXd final_state;
  Eigen::MatrixXd final_state_cov;  // sigma2-scaled
  std::vector<double> integrate_tail;  // last value of diff^j(data), j=0..d-1
};

/// Gaussian-innovation sample path; a burn-in of 10*(max lag) is discarded.
/// Deterministic for a given seed. Throws std::domain_error on
/// non-stationary or non-invertible parameters.
Series simulate(const ArimaSpec& spec, const ArimaParams& params, int n,
                std::uint64_t seed, QuarterDate start = QuarterDate(2000, 1),
                std::string name = "sim");

/// Exact Gaussian log-likelihood: the series is differenced d times and
/// mean-adjusted, then filtered in the Harvey state-space form with the
/// stationary initial covariance from the discrete Lyapunov equation.
double loglik(const ArimaSpec& spec, const ArimaParams& params,
              const Series& data);

/// Exact maximum likelihood over an unconstrained reparameterization
/// (partial-autocorrelation transform for dense AR/MA blocks), sigma2
/// concentrated out. Nelder-Mead refined by BFGS, five deterministic
/// starts (Hannan-Rissanen values plus jitter).
ArimaFit fit_mle(const ArimaSpec& spec, const Series& data);

/// h-step forecasts from the Kalman state with exact prediction standard
/// errors; for d > 0 the forecasts are integrated back to levels.
std::vector<ForecastPoint> forecast(const ArimaFit& fit, int h);

struct ArimaSearchOptions {
  int max_p = 5;
  int max_q = 5;
  int d = 0;
  InterceptPolicy intercept = InterceptPolicy::Always;
};

/// Fits every AR-lag subset of {1..max_p} x MA-lag subset of {1..max_q}
/// (non-convergent candidates skipped) and ranks by ascending AIC;
/// near-ties (<1e-9) prefer fewer parameters, then lower maximal lag.
std::vector<ArimaFit> best_subset(const Series& data,
                                  const ArimaSearchOptions& opts);

/// Reflection coefficients in (-1,1) -> stationary dense AR coefficients
/// (Levinson recursion), and its inverse. The inverse throws
/// std::domain_error when the polynomial is not stationary.
std::vector<double> pacf_to_ar(std::span<const double> reflections);
std::vector<double> ar_to_pacf(std::span<const double> phi);

/// True when 1 + sum coeffs[i] z^lags[i] has all roots outside the unit
/// circle (pass -phi for an AR polynomial 1 - sum phi z^l).
bool lag_poly_admissible(std::span<const double> coeffs,
                         std::span<const int> lags, double margin = 0.0);

}  // namespace qts
