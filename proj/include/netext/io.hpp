#pragma once

// CSV (RFC 4180: quoted fields, CRLF records) and JSON output helpers. All
// numbers are printed with %.17g so reruns produce byte-identical files.

#include <json.hpp>
#include <string>
#include <vector>

namespace netext::io {

using json = nlohmann::json;

std::string format_double(double x);

std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::string path_;
  std::string buf_;
  bool closed_ = false;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// sorted keys (nlohmann objects are std::map-backed), 2-space indent, UTF-8
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

json vector_to_json(const std::vector<double>& v);

}  // namespace netext::io
