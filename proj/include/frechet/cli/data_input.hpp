#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frechet/errors.hpp"

namespace frechet::cli {

// Input that cannot be read or parsed (missing file, bad token, ragged CSV).
// Distinct from DataError, which flags readable but invalid values.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line = 0) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// "bundled:<name>" or a file path. A CSV column selects the CSV reader;
// otherwise values are separated by whitespace and/or commas.
struct DatasetRef {
  enum class Source { kBundled, kFile };
  Source source = Source::kFile;
  std::string location;  // bundled name or path
  std::optional<std::string> csv_column;

  static DatasetRef parse(std::string_view spec, std::optional<std::string> column = std::nullopt);
  std::string describe() const;
};

struct LoadedData {
  std::vector<double> values;
  std::string label;
};

// Throws InputError when unreadable/malformed and DataError (with the
// 1-based line) on a nonpositive or non-finite value.
LoadedData load_dataset(const DatasetRef& ref);

// Parsers over in-memory text; `lines` start at 1.
std::vector<double> parse_plain(std::string_view text);
std::vector<double> parse_csv_column(std::string_view text, std::string_view column);

}  // namespace frechet::cli
