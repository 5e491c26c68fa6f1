#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frechet {

// Scale lambda and shape alpha of F(t) = exp(-lambda t^-alpha).
// Both strictly positive and finite; construction through make() validates.
struct FrechetParams {
  double lambda = 1.0;
  double alpha = 1.0;

  static FrechetParams make(double lambda, double alpha);
  bool valid() const noexcept;

  friend bool operator==(const FrechetParams&, const FrechetParams&) = default;
};

// Validated positive observations with their ascending order and logs cached.
class Sample {
 public:
  // Throws DataError naming the first offending index (0-based) when a value
  // is nonpositive or non-finite, or when fewer than two values are given.
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }
  // log of values(), same order.
  std::span<const double> logs() const noexcept { return logs_; }
  // log of sorted(), same order.
  std::span<const double> sorted_logs() const noexcept { return sorted_logs_; }

  double sum_logs() const noexcept { return sum_logs_; }
  double mean() const noexcept { return mean_; }
  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }
  bool all_equal() const noexcept { return sorted_.front() == sorted_.back(); }

  // Sample standard deviation with divisor n - 1.
  double stddev() const noexcept;

  Sample scaled(double factor) const;

  friend bool operator==(const Sample& a, const Sample& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  std::vector<double> logs_;
  std::vector<double> sorted_logs_;
  double sum_logs_ = 0.0;
  double mean_ = 0.0;
};

}  // namespace frechet
