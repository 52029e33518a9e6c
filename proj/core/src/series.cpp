#include "qts/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qts {

Series::Series(std::string name, QuarterDate start, std::vector<double> values)
    : name_(std::move(name)), start_(start), values_(std::move(values)) {
  if (values_.empty()) {
    throw std::length_error("series '" + name_ + "' must have length >= 1");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::domain_error("series '" + name_ + "' has non-finite value at " +
                              start_.plus(static_cast<int>(i)).str());
    }
  }
}

double Series::at(QuarterDate d) const {
  if (!contains(d)) {
    throw std::out_of_range("series '" + name_ + "' has no value at " +
                            d.str() + " (span " + start_.str() + ".." +
                            end().str() + ")");
  }
  return values_[static_cast<std::size_t>(d.minus(start_))];
}

Series Series::renamed(std::string name) const {
  return Series(std::move(name), start_, values_);
}

Series pct_change(const Series& s, int periods) {
  if (periods < 1) throw std::invalid_argument("pct_change: periods must be >= 1");
  if (s.size() <= static_cast<std::size_t>(periods)) {
    throw std::length_error("pct_change: series '" + s.name() + "' of length " +
                            std::to_string(s.size()) +
                            " is too short for periods=" +
                            std::to_string(periods));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= 0.0) {
      throw std::domain_error("pct_change: non-positive level in '" + s.name() +
                              "' at " + s.date_at(i).str());
    }
  }
  std::vector<double> out(s.size() - periods);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = s[i + periods] / s[i] - 1.0;
  }
  return Series(s.name() + "_pct" + std::to_string(periods),
                s.start().plus(periods), std::move(out));
}

Series lag(const Series& s, int k) {
  if (k < 1) throw std::invalid_argument("lag: k must be >= 1");
  if (static_cast<std::size_t>(k) >= s.size()) {
    throw std::length_error("lag: k=" + std::to_string(k) +
                            " >= length of '" + s.name() + "'");
  }
  std::vector<double> out(s.values().begin(), s.values().end() - k);
  return Series(s.name() + "_lag" + std::to_string(k), s.start().plus(k),
                std::move(out));
}

Series diff(const Series& s, int k) {
  if (k < 0) throw std::invalid_argument("diff: k must be >= 0");
  if (k == 0) return s;
  if (s.size() <= static_cast<std::size_t>(k)) {
    throw std::length_error("diff: series '" + s.name() + "' too short for " +
                            std::to_string(k) + " differences");
  }
  std::vector<double> v(s.values().begin(), s.values().end());
  for (int round = 0; round < k; ++round) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return Series(s.name() + "_d" + std::to_string(k), s.start().plus(k),
                std::move(v));
}

Series log_transform(const Series& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= 0.0) {
      throw std::domain_error("log: non-positive value in '" + s.name() +
                              "' at " + s.date_at(i).str());
    }
    out[i] = std::log(s[i]);
  }
  return Series("log_" + s.name(), s.start(), std::move(out));
}

Series cumulate(const Series& s) {
  std::vector<double> out(s.size());
  std::partial_sum(s.values().begin(), s.values().end(), out.begin());
  return Series(s.name() + "_cum", s.start(), std::move(out));
}

Series slice(const Series& s, QuarterDate from, QuarterDate to) {
  if (from > to) throw std::invalid_argument("slice: from > to");
  QuarterDate lo = std::max(from, s.start());
  QuarterDate hi = std::min(to, s.end());
  if (lo > hi) {
    throw std::out_of_range("slice: [" + from.str() + ".." + to.str() +
                            "] does not intersect span of '" + s.name() +
                            "' (" + s.start().str() + ".." + s.end().str() +
                            ")");
  }
  auto first = static_cast<std::size_t>(lo.minus(s.start()));
  auto count = static_cast<std::size_t>(hi.minus(lo)) + 1;
  std::vector<double> out(s.values().begin() + first,
                          s.values().begin() + first + count);
  return Series(s.name(), lo, std::move(out));
}

SummaryStats summary_stats(const Series& s) {
  std::vector<double> sorted(s.values().begin(), s.values().end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  auto quantile = [&](double p) {
    if (n == 1) return sorted[0];
    double h = static_cast<double>(n - 1) * p;
    auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
  };

  SummaryStats st;
  st.min = sorted.front();
  st.q1 = quantile(0.25);
  st.median = quantile(0.5);
  st.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
            static_cast<double>(n);
  st.q3 = quantile(0.75);
  st.max = sorted.back();
  return st;
}

Frame Frame::align(std::vector<Series> columns) {
  if (columns.empty()) {
    throw std::invalid_argument("align: at least one column required");
  }
  QuarterDate lo = columns.front().start();
  QuarterDate hi = columns.front().end();
  for (const auto& c : columns) {
    lo = std::max(lo, c.start());
    hi = std::min(hi, c.end());
  }
  if (lo > hi) {
    std::string spans;
    for (const auto& c : columns) {
      spans += " " + c.name() + "=" + c.start().str() + ".." + c.end().str();
    }
    throw std::out_of_range("align: empty overlap between spans:" + spans);
  }
  Frame f;
  f.start_ = lo;
  f.length_ = static_cast<std::size_t>(hi.minus(lo)) + 1;
  f.columns_.reserve(columns.size());
  for (auto& c : columns) f.columns_.push_back(slice(c, lo, hi));
  return f;
}

bool Frame::has(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Series& c) { return c.name() == name; });
}

const Series& Frame::column(const std::string& name) const {
  for (const auto& c : columns_) {
    if (c.name() == name) return c;
  }
  throw std::out_of_range("frame has no column '" + name + "'");
}

std::vector<std::string> Frame::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name());
  return out;
}

Frame Frame::sliced(QuarterDate from, QuarterDate to) const {
  std::vector<Series> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(slice(c, from, to));
  return align(std::move(cols));
}

}  // namespace qts
