#pragma once
// CSV output with RFC-4180 quoting. Numeric cells are formatted with 17
// significant digits so identical runs produce byte-identical files.

#include <string>
#include <vector>

namespace dnlslab {

std::string format_double(double v); // %.17g

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string serialize() const;
  void write(const std::string& path) const;
  size_t rows() const { return rows_.size(); }

  static std::string quote(const std::string& cell);

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

} // namespace dnlslab
