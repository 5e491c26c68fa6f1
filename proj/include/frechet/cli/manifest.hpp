#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

namespace frechet::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64 over the values printed with %.17g, one per line; hex encoded.
std::string fingerprint(std::span<const double> values);

struct RunManifest {
  std::string command;
  std::string dataset;  // label of the input, empty when none
  std::string dataset_fingerprint;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::string version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC

  nlohmann::ordered_json to_json() const;
};

// Current wall-clock time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

// Explicit seed if given, else FRECHET_SEED from the environment, else the fallback.
// Throws InputError when the environment value is not an unsigned integer.
std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::uint64_t fallback);

}  // namespace frechet::cli
