#include "frechet/cli/manifest.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string_view>

#include "frechet/cli/data_input.hpp"

namespace frechet::cli {

std::string fingerprint(std::span<const double> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[40];
  for (double v : values) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g\n", v);
    for (int i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  if (!dataset.empty()) {
    j["dataset"] = dataset;
    j["dataset_fingerprint"] = dataset_fingerprint;
  }
  j["config"] = config;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::uint64_t fallback) {
  if (explicit_seed) return *explicit_seed;
  const char* env = std::getenv("FRECHET_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string_view text(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("FRECHET_SEED must be an unsigned integer, got '" + std::string(text) + "'");
  }
  return seed;
}

}  // namespace frechet::cli
