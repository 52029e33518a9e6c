#include "qts/quarter.hpp"

#include <charconv>
#include <stdexcept>

namespace qts {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

QuarterDate::QuarterDate(int year, int quarter) : year_(year), quarter_(quarter) {
  if (quarter < 1 || quarter > 4) {
    throw std::invalid_argument("quarter must be in 1..4, got " +
                                std::to_string(quarter));
  }
}

QuarterDate QuarterDate::plus(int n) const {
  int flat = year_ * 4 + (quarter_ - 1) + n;
  QuarterDate out;
  out.year_ = floor_div(flat, 4);
  out.quarter_ = flat - out.year_ * 4 + 1;
  return out;
}

int QuarterDate::minus(const QuarterDate& other) const {
  return (year_ - other.year_) * 4 + (quarter_ - other.quarter_);
}

std::string QuarterDate::str() const {
  return std::to_string(year_) + "Q" + std::to_string(quarter_);
}

QuarterDate QuarterDate::parse(std::string_view text) {
  auto qpos = text.find('Q');
  if (qpos == std::string_view::npos) qpos = text.find('q');
  if (qpos == std::string_view::npos || qpos == 0 || qpos + 2 != text.size()) {
    throw std::invalid_argument("expected YYYYQn date, got '" +
                                std::string(text) + "'");
  }
  int year = 0;
  auto [yp, yerr] = std::from_chars(text.data(), text.data() + qpos, year);
  int quarter = text[qpos + 1] - '0';
  if (yerr != std::errc{} || yp != text.data() + qpos || quarter < 1 ||
      quarter > 4) {
    throw std::invalid_argument("expected YYYYQn date, got '" +
                                std::string(text) + "'");
  }
  return QuarterDate(year, quarter);
}

}  // namespace qts
