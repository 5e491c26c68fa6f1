#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

// Bundled observations: minimum monthly river flows (m^3/s) for May to
// September, and a small fatigue-lifetime sample.
namespace frechet::datasets {

inline constexpr std::array<std::string_view, 6> kNames = {"may",    "june",      "july",
                                                           "august", "september", "fatigue"};
inline constexpr std::array<std::string_view, 5> kMonthly = {"may", "june", "july", "august",
                                                             "september"};

// Values in their published order; nullopt for an unknown (case-sensitive) name.
std::optional<std::span<const double>> bundled(std::string_view name);

// The n=30 sample obtained from R's set.seed(2018) uniform stream pushed
// through the Frechet(lambda=4, alpha=2) quantile.
std::vector<double> seeded_reference_sample();

}  // namespace frechet::datasets
