#include "qts/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qts {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, const std::string& column, int row) {
  std::string t = trim(cell);
  if (t.empty()) {
    throw CsvError("row " + std::to_string(row) + ": empty value in column '" +
                   column + "'");
  }
  errno = 0;
  char* endp = nullptr;
  double v = std::strtod(t.c_str(), &endp);
  if (endp != t.c_str() + t.size() || errno == ERANGE) {
    throw CsvError("row " + std::to_string(row) + ": cannot parse '" + t +
                   "' in column '" + column + "' as a number");
  }
  return v;
}

}  // namespace

Frame load_csv(const std::filesystem::path& path, const std::string& date_column,
               const std::vector<std::string>& value_columns) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw CsvError("'" + path.string() + "' is empty");
  auto header = split_row(line);
  for (auto& h : header) h = trim(h);

  auto col_index = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw CsvError("'" + path.string() + "' has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t date_idx = col_index(date_column);
  std::vector<std::size_t> value_idx;
  for (const auto& name : value_columns) value_idx.push_back(col_index(name));

  std::vector<QuarterDate> dates;
  std::vector<std::vector<double>> values(value_columns.size());
  int row = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw CsvError("row " + std::to_string(row) + ": expected " +
                     std::to_string(header.size()) + " cells, got " +
                     std::to_string(cells.size()));
    }
    QuarterDate d;
    try {
      d = QuarterDate::parse(trim(cells[date_idx]));
    } catch (const std::invalid_argument& e) {
      throw CsvError("row " + std::to_string(row) + ": " + e.what());
    }
    if (!dates.empty()) {
      int step = d.minus(dates.back());
      if (step <= 0) {
        throw CsvError("row " + std::to_string(row) + ": date " + d.str() +
                       " repeats or precedes " + dates.back().str());
      }
      if (step > 1) {
        throw CsvError("row " + std::to_string(row) + ": gap between " +
                       dates.back().str() + " and " + d.str());
      }
    }
    dates.push_back(d);
    for (std::size_t c = 0; c < value_idx.size(); ++c) {
      values[c].push_back(parse_number(cells[value_idx[c]], value_columns[c], row));
    }
  }
  if (dates.empty()) throw CsvError("'" + path.string() + "' has no data rows");

  std::vector<Series> cols;
  cols.reserve(value_columns.size());
  for (std::size_t c = 0; c < value_columns.size(); ++c) {
    cols.emplace_back(value_columns[c], dates.front(), std::move(values[c]));
  }
  return Frame::align(std::move(cols));
}

Frame load_csv(const std::filesystem::path& path, const std::string& date_column) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw CsvError("'" + path.string() + "' is empty");
  std::vector<std::string> cols;
  for (auto& h : split_row(line)) {
    auto name = trim(h);
    if (name != date_column) cols.push_back(name);
  }
  return load_csv(path, date_column, cols);
}

void write_csv(const Frame& frame, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot write '" + path.string() + "'");
  out << "date";
  for (const auto& c : frame.columns()) out << "," << c.name();
  out << "\n";
  char buf[40];
  for (std::size_t i = 0; i < frame.length(); ++i) {
    out << frame.start().plus(static_cast<int>(i)).str();
    for (const auto& c : frame.columns()) {
      std::snprintf(buf, sizeof buf, "%.17g", c[i]);
      out << "," << buf;
    }
    out << "\n";
  }
}

void write_csv(const Series& series, const std::filesystem::path& path) {
  write_csv(Frame::align({series}), path);
}

}  // namespace qts
