#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nhzak {

// Header row, RFC 4180 quoting, numbers with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
  CsvWriter& field(const std::string& v);
  CsvWriter& field(const char* v) { return field(std::string(v)); }
  void end_row();

 private:
  void separator();
  std::ofstream out_;
  std::string path_;
  bool row_started_ = false;
};

std::string format_number(double v);
std::string csv_quote(const std::string& s);

// Flat "key = value" file.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void write(const std::string& path) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace nhzak
