#include "qts/breaks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qts {

BreakResult detect_breaks(const Series& s, int max_breaks, double trim) {
  if (max_breaks < 1) throw std::invalid_argument("detect_breaks: max_breaks >= 1");
  if (!(trim > 0.0 && trim < 0.5)) {
    throw std::invalid_argument("detect_breaks: trim must be in (0, 0.5)");
  }
  const auto n = static_cast<int>(s.size());
  const int h = static_cast<int>(std::ceil(trim * n));
  if (n < (max_breaks + 1) * h) {
    throw std::length_error("detect_breaks: length " + std::to_string(n) +
                            " < (max_breaks+1)*h = " +
                            std::to_string((max_breaks + 1) * h));
  }

  // Prefix sums give O(1) segment cost.
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    s1[i + 1] = s1[i] + s[i];
    s2[i + 1] = s2[i] + s[i] * s[i];
  }
  auto cost = [&](int i, int j) {  // inclusive segment [i, j]
    const double sum = s1[j + 1] - s1[i];
    const double ssq = s2[j + 1] - s2[i];
    const int len = j - i + 1;
    return ssq - sum * sum / len;
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // D[b][i]: minimal RSS of splitting x[i..n-1] into b+1 segments; the
  // suffix orientation lets backtracking pick the earliest break on ties.
  std::vector<std::vector<double>> D(max_breaks + 1,
                                     std::vector<double>(n + 1, inf));
  std::vector<std::vector<int>> E(max_breaks + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i + h <= n; ++i) D[0][i] = cost(i, n - 1);
  for (int b = 1; b <= max_breaks; ++b) {
    for (int i = 0; i + (b + 1) * h <= n; ++i) {
      double best = inf;
      int best_e = -1;
      for (int e = i + h - 1; e <= n - 1 - b * h; ++e) {
        const double c = cost(i, e) + D[b - 1][e + 1];
        if (c < best) {
          best = c;
          best_e = e;
        }
      }
      D[b][i] = best;
      E[b][i] = best_e;
    }
  }

  BreakResult r;
  r.n_breaks_considered = max_breaks;
  r.min_segment = h;
  r.trim = trim;

  const auto nd = static_cast<double>(n);
  int chosen_m = 0;
  double chosen_bic = inf;
  for (int m = 0; m <= max_breaks; ++m) {
    if (!std::isfinite(D[m][0]) && D[m][0] > 0) continue;  // infeasible layer
    const double bic = nd * std::log(D[m][0] / nd) + 2.0 * (m + 1) * std::log(nd);
    r.criterion_scores.emplace_back(m, bic);
    if (bic < chosen_bic) {
      chosen_bic = bic;
      chosen_m = m;
    }
  }

  r.total_rss = D[chosen_m][0];
  int i = 0;
  for (int b = chosen_m; b >= 1; --b) {
    const int e = E[b][i];
    r.break_dates.push_back(s.date_at(e + 1));
    const double seg_mean = (s1[e + 1] - s1[i]) / (e + 1 - i);
    r.segment_means.push_back(seg_mean);
    i = e + 1;
  }
  r.segment_means.push_back((s1[n] - s1[i]) / (n - i));
  return r;
}

}  // namespace qts
