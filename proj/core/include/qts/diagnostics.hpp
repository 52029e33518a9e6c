#pragma once

#include <string>
#include <vector>

#include "qts/series.hpp"

namespace qts {

/// Outcome of a hypothesis test at the fixed 5% level. For every test but
/// ADF, reject_at_5pct <=> p_value < 0.05; ADF compares the statistic
/// against MacKinnon critical values instead.
struct TestResult {
  std::string test;
  double statistic = 0;
  double p_value = 1;
  int context = 0;  // dof, lag count, or sample size, per test
  bool reject_at_5pct = false;
  std::string note;
};

struct CorrelogramPoint {
  int lag = 0;
  double value = 0;
  double conf_bound = 0;  // +-1.96/sqrt(n)
};

/// Sample autocorrelations r_0..r_max_lag, biased (1/n) convention,
/// normalized so r_0 = 1. Throws std::domain_error on constant input.
std::vector<CorrelogramPoint> acf(const Series& s, int max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on the
/// sample ACF. Requires max_lag < n/2.
std::vector<CorrelogramPoint> pacf(const Series& s, int max_lag);

/// Portmanteau test of joint zero residual autocorrelation up to `lags`,
/// chi-square with lags - fitted_params dof.
TestResult ljung_box(const Series& residuals, int lags, int fitted_params = 0);

/// Moment-based normality test, chi-square(2). Requires n >= 8.
TestResult jarque_bera(const Series& residuals);

/// Royston AS R94 approximation; valid for 3 <= n <= 5000.
TestResult shapiro_wilk(const Series& residuals);

/// White heteroskedasticity test: n R^2 from regressing squared residuals
/// on the regressors, their squares, and (optionally) pairwise
/// cross-products. Redundant auxiliary columns are dropped and noted.
TestResult white_test(const Series& residuals, const Frame& regressors,
                      bool cross_products = true);

enum class AdfDeterministic { Drift, Trend };

struct AdfLagRule {
  enum class Kind { Fixed, InfoCriterion };
  Kind kind = Kind::Fixed;
  int lags = 0;

  static AdfLagRule fixed(int k) { return {Kind::Fixed, k}; }
  static AdfLagRule info_criterion(int max_k) {
    return {Kind::InfoCriterion, max_k};
  }
};

/// Augmented Dickey-Fuller unit-root test. The info-criterion rule picks
/// the augmentation count <= max_k minimizing the AIC of the test
/// regression (candidates compared on a common window). context carries
/// the augmentation count used; p-values and critical values follow the
/// MacKinnon response surfaces.
TestResult adf_test(const Series& s, AdfDeterministic deterministic,
                    AdfLagRule lag_rule);

}  // namespace qts
