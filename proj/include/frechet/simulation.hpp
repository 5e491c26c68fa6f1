#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frechet/bayes.hpp"
#include "frechet/classical.hpp"

// Monte-Carlo study of estimator bias, error and interval coverage.
namespace frechet {

// Estimators in a study: the nine classical methods plus the posterior median.
struct StudyMethod {
  bool bayes = false;
  Method method = Method::kMLE;  // ignored when bayes

  std::string name() const;
  friend bool operator==(const StudyMethod&, const StudyMethod&) = default;
};

std::vector<StudyMethod> all_study_methods();
// Accepts the classical names plus "bayes".
std::optional<StudyMethod> parse_study_method(std::string_view name);

struct StudyConfig {
  FrechetParams truth{2.0, 4.0};
  std::vector<std::size_t> sample_sizes{20, 50, 100};
  int replications = 1000;
  std::vector<StudyMethod> methods = all_study_methods();
  std::uint64_t master_seed = 2018;
  SolverConfig solver;
  McmcConfig mcmc;  // seed is replaced per replication
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

// Seed of the stream for replication `rep` at sample size `n`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t rep, std::uint64_t n);

struct StudyRow {
  std::string method;
  std::size_t n = 0;
  std::string parameter;  // "lambda" or "alpha"
  double mre = 0.0;
  double mse = 0.0;
  std::optional<double> coverage;  // only where intervals exist
  int failures = 0;  // excluded from mre, mse and coverage
  int used = 0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;  // method-major, then n, then lambda before alpha

  const StudyRow* find(std::string_view method, std::size_t n, std::string_view parameter) const;
  std::string to_csv() const;
};

StudyResult run_study(const StudyConfig& cfg);

}  // namespace frechet
