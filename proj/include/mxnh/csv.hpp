#pragma once

// Minimal CSV for the command-line tool: comma separated, '.' decimal
// point, header row, reals at 9 significant digits. Lines starting with '#'
// are comments.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mxnh::csv {

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

using Row = std::vector<std::string>;

/// Header plus rows in a fixed column order.
class Table {
 public:
  explicit Table(Row header) : header_(std::move(header)) {}

  void add_row(Row row) { rows_.push_back(std::move(row)); }

  const Row& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }

  void write(std::ostream& out) const {
    write_row(out, header_);
    for (const auto& r : rows_) write_row(out, r);
  }

  std::string str() const {
    std::ostringstream ss;
    write(ss);
    return ss.str();
  }

 private:
  static void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }

  Row header_;
  std::vector<Row> rows_;
};

inline Row split_line(std::string_view line) {
  Row out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Parses text into a Table; blank lines and '#' comments are skipped. The
/// first remaining line is the header.
inline Table parse(std::string_view text) {
  std::vector<Row> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') lines.push_back(split_line(line));
    start = end + 1;
  }
  if (lines.empty()) return Table({});
  Table t(std::move(lines.front()));
  for (std::size_t i = 1; i < lines.size(); ++i) t.add_row(std::move(lines[i]));
  return t;
}

}  // namespace mxnh::csv
