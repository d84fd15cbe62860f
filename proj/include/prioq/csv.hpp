#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace prioq {

// Shortest round-trip text for v with at most 17 significant digits,
// '.' decimal separator regardless of locale. NaN -> "nan", inf -> "inf".
std::string format_number(double v);
std::string format_number(long long v);
std::string format_number(unsigned long long v);
inline std::string format_number(int v) { return format_number(static_cast<long long>(v)); }
inline std::string format_number(long v) { return format_number(static_cast<long long>(v)); }
inline std::string format_number(unsigned long v) {
  return format_number(static_cast<unsigned long long>(v));
}

// CSV file whose first line is "# config: <json>" followed by a header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view config_json,
            std::initializer_list<std::string_view> columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(unsigned long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(unsigned long v) { return cell(static_cast<unsigned long long>(v)); }
  CsvWriter& cell(long v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::string_view text);
  CsvWriter& empty();
  void end_row();
  // Flushes and throws IoError on any write failure.
  void close();

 private:
  void put(std::string_view text);
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

// Write a whole text file, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace prioq
