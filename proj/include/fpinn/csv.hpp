#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpinn {

/// Full-precision text form of a double (17 significant digits).
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal CSV emitter: header row, then rows of mixed text/number cells.
// Doubles are always written with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open CSV output: " + path);
    write_cells(header);
  }

  void row(const std::vector<std::string>& cells) { write_cells(cells); }

  class RowBuilder {
   public:
    explicit RowBuilder(CsvWriter& w) : w_(w) {}
    RowBuilder& operator<<(double v) {
      cells_.push_back(format_full(v));
      return *this;
    }
    RowBuilder& operator<<(int v) {
      cells_.push_back(std::to_string(v));
      return *this;
    }
    RowBuilder& operator<<(long long v) {
      cells_.push_back(std::to_string(v));
      return *this;
    }
    RowBuilder& operator<<(const std::string& v) {
      cells_.push_back(v);
      return *this;
    }
    RowBuilder& operator<<(const char* v) {
      cells_.emplace_back(v);
      return *this;
    }
    ~RowBuilder() { w_.write_cells(cells_); }

   private:
    CsvWriter& w_;
    std::vector<std::string> cells_;
  };

  RowBuilder row() { return RowBuilder(*this); }

  void flush() { out_.flush(); }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
  friend class RowBuilder;
};

}  // namespace fpinn
