#include "prioq/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "prioq/error.hpp"

namespace prioq {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  // Shortest representation that round-trips; never more than 17 digits.
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(long long v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(unsigned long long v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view config_json,
                     std::initializer_list<std::string_view> columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
  if (!out_) throw IoError("cannot open for writing: " + path.string());
  out_ << "# config: " << config_json << '\n';
  bool first = true;
  for (auto c : columns) {
    if (!first) out_ << ',';
    out_ << c;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::put(std::string_view text) {
  if (in_row_ > 0) out_ << ',';
  out_ << text;
  ++in_row_;
}

CsvWriter& CsvWriter::cell(double v) {
  put(format_number(v));
  return *this;
}
CsvWriter& CsvWriter::cell(long long v) {
  put(format_number(v));
  return *this;
}
CsvWriter& CsvWriter::cell(unsigned long long v) {
  put(format_number(v));
  return *this;
}
CsvWriter& CsvWriter::cell(std::string_view text) {
  put(text);
  return *this;
}
CsvWriter& CsvWriter::empty() {
  put("");
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvWriter: row has " + std::to_string(in_row_) +
                           " cells, expected " + std::to_string(columns_));
  out_ << '\n';
  in_row_ = 0;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write failed: " + path_.string());
  out_.close();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace prioq
