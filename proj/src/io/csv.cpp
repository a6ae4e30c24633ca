#include "phnet/io/csv.hpp"

#include "phnet/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace phnet::io {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw Error(ErrorKind::InvalidValue, "table needs at least one column");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorKind::InvalidValue, "row has " + std::to_string(row.size()) + " values, header has " +
                                             std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidValue, "no column named '" + name + "'");
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[c]);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error(ErrorKind::InvalidValue, "cannot format number");
  return std::string(buf, end);
}

void write_csv(const ResultTable& table, std::ostream& out) {
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_csv_file(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidValue, "cannot open '" + path + "' for writing");
  write_csv(table, out);
  if (!out) throw Error(ErrorKind::InvalidValue, "failed writing '" + path + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell) {
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return HUGE_VAL;
  if (cell == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || end != cell.data() + cell.size()) {
    throw Error(ErrorKind::ParseError, "not a number: '" + cell + "'");
  }
  return value;
}

}  // namespace

ResultTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::EmptyData, "csv has no header");
  ResultTable table(split(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_number(cell));
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidValue, "cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace phnet::io
