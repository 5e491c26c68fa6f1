#include "frechet/cli/data_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "frechet/datasets.hpp"

namespace frechet::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_value(std::string_view token, std::size_t line) {
  const std::string tok(trim(token));
  if (tok.empty()) throw InputError("line " + std::to_string(line) + ": empty field", line);
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InputError("line " + std::to_string(line) + ": not a number: '" + tok + "'", line);
  }
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DataError("line " + std::to_string(line) + ": value " + tok + " is not positive and finite",
                    line);
  }
  return v;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++line;
    f(text.substr(pos, end - pos), line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::vector<std::string_view> split_csv(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto c = row.find(',', pos);
    out.push_back(trim(row.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos)));
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  for (auto& f : out) {
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
  }
  return out;
}

}  // namespace

DatasetRef DatasetRef::parse(std::string_view spec, std::optional<std::string> column) {
  DatasetRef ref;
  constexpr std::string_view kPrefix = "bundled:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) {
    ref.source = Source::kBundled;
    ref.location = std::string(spec.substr(kPrefix.size()));
    if (!datasets::bundled(ref.location)) {
      throw InputError("unknown bundled dataset '" + ref.location + "'");
    }
    if (column) throw InputError("--column applies to files only");
  } else {
    if (spec.empty()) throw InputError("empty dataset reference");
    ref.source = Source::kFile;
    ref.location = std::string(spec);
    ref.csv_column = std::move(column);
  }
  return ref;
}

std::string DatasetRef::describe() const {
  if (source == Source::kBundled) return "bundled:" + location;
  return csv_column ? location + "#" + *csv_column : location;
}

std::vector<double> parse_plain(std::string_view text) {
  std::vector<double> values;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    const auto hash = row.find('#');
    if (hash != std::string_view::npos) row = row.substr(0, hash);
    std::size_t pos = 0;
    while (pos < row.size()) {
      const auto b = row.find_first_not_of(" \t\r,", pos);
      if (b == std::string_view::npos) break;
      auto e = row.find_first_of(" \t\r,", b);
      if (e == std::string_view::npos) e = row.size();
      values.push_back(parse_value(row.substr(b, e - b), line));
      pos = e;
    }
  });
  return values;
}

std::vector<double> parse_csv_column(std::string_view text, std::string_view column) {
  std::vector<double> values;
  std::optional<std::size_t> index;
  std::size_t width = 0;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    if (trim(row).empty()) return;
    const auto fields = split_csv(row);
    if (!index) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == column) index = i;
      }
      if (!index) {
        throw InputError("line " + std::to_string(line) + ": no column named '" +
                             std::string(column) + "' in header",
                         line);
      }
      width = fields.size();
      return;
    }
    if (fields.size() != width) {
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(width) +
                           " fields, found " + std::to_string(fields.size()),
                       line);
    }
    values.push_back(parse_value(fields[*index], line));
  });
  if (!index) throw InputError("CSV input has no header row");
  return values;
}

LoadedData load_dataset(const DatasetRef& ref) {
  LoadedData out;
  out.label = ref.describe();
  if (ref.source == DatasetRef::Source::kBundled) {
    const auto span = datasets::bundled(ref.location);
    if (!span) throw InputError("unknown bundled dataset '" + ref.location + "'");
    out.values.assign(span->begin(), span->end());
    return out;
  }
  std::ifstream in(ref.location, std::ios::binary);
  if (!in) throw InputError("cannot open '" + ref.location + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("error reading '" + ref.location + "'");
  const std::string text = buf.str();
  out.values = ref.csv_column ? parse_csv_column(text, *ref.csv_column) : parse_plain(text);
  if (out.values.size() < 2) {
    throw DataError("need at least two observations, found " + std::to_string(out.values.size()));
  }
  return out;
}

}  // namespace frechet::cli
