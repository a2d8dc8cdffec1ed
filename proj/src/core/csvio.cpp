#include "core/csvio.hpp"

#include <cstdio>
#include <stdexcept>

namespace dpnls {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path), ncols_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

std::string CsvWriter::num(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncols_)
    throw std::runtime_error("csv row width mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << num(values[i]);
  out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
  if (cells.size() != ncols_)
    throw std::runtime_error("csv row width mismatch");
  for (size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

}  // namespace dpnls
