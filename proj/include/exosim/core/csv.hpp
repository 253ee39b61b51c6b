#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "exosim/core/error.hpp"

namespace exosim {

// Shortest round-trip decimal representation of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// In-memory CSV table with a strict reader: rectangular rows, LF endings,
// no quoting (none of our formats needs it).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }

  double value(std::size_t row, int col) const {
    const std::string& cell = rows[row][static_cast<std::size_t>(col)];
    double out = 0.0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw FormatError("csv: row " + std::to_string(row + 2) + ": not a number: '" + cell + "'");
    return out;
  }
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("csv: cannot open " + path);
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (lineno == 1) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size())
        throw FormatError("csv: row " + std::to_string(lineno) + ": expected " +
                          std::to_string(table.header.size()) + " cells, got " +
                          std::to_string(cells.size()));
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) throw FormatError("csv: " + path + " has no header");
  return table;
}

// Streaming CSV writer.
class CsvWriter {
 public:
  void set_header(std::vector<std::string> names) {
    header_ = std::move(names);
    out_ << join(header_) << '\n';
  }

  void add_row(const std::vector<double>& values) {
    if (values.size() != header_.size())
      throw InvalidArgument("csv writer: row width mismatch");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += format_double(values[i]);
    }
    out_ << line << '\n';
  }

  void add_row_raw(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size())
      throw InvalidArgument("csv writer: row width mismatch");
    out_ << join(cells) << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    return line;
  }

  std::vector<std::string> header_;
  std::ostringstream out_;
};

// Write-to-temp-then-rename so interrupted runs never leave a partial file
// under a valid name.
inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace exosim
