#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phnet::io {

/// Rectangular table of reals with a header row.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  /// Throws InvalidValue when the row arity does not match the header.
  void add_row(std::vector<double> row);

  /// Index of a named column; throws InvalidValue when absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double value);

/// Comma separated, LF line endings, header first.
void write_csv(const ResultTable& table, std::ostream& out);
void write_csv_file(const ResultTable& table, const std::string& path);

ResultTable read_csv(std::istream& in);
ResultTable read_csv_file(const std::string& path);

}  // namespace phnet::io
