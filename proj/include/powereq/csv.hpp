#pragma once

#include <optional>
#include <string>
#include <vector>

namespace powereq {

/// Minimal comma-separated table: header plus string cells, with the source
/// line of every row kept for error messages. No quoting support; cells must
/// not contain commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<long> lines;

  /// Column index or SchemaError naming the missing column.
  std::size_t column(const std::string& name) const;
  std::optional<std::size_t> find_column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source = "<csv>");
CsvTable read_csv(const std::string& path);

/// Streams rows with shortest round-trip decimals.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  static std::string cell(double v);
  static std::string cell(std::optional<double> v);
  const std::string& text() const noexcept { return out_; }

 private:
  std::size_t width_;
  std::string out_;
};

/// Writes to path.tmp then renames; "-" or "" writes to stdout.
void write_output_atomic(const std::string& path, const std::string& content);

}  // namespace powereq
