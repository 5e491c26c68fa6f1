#include "frechet/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frechet/errors.hpp"

namespace frechet {

FrechetParams FrechetParams::make(double lambda, double alpha) {
  FrechetParams p{lambda, alpha};
  if (!p.valid()) {
    throw DomainError("Frechet parameters must be positive and finite (lambda=" +
                      std::to_string(lambda) + ", alpha=" + std::to_string(alpha) + ")");
  }
  return p;
}

bool FrechetParams::valid() const noexcept {
  return std::isfinite(lambda) && std::isfinite(alpha) && lambda > 0.0 && alpha > 0.0;
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DataError("sample needs at least two observations, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw DataError("observation " + std::to_string(i) + " is not a positive finite number",
                      i + 1);
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());

  logs_.reserve(values_.size());
  double sum = 0.0;
  for (double v : values_) {
    logs_.push_back(std::log(v));
    sum_logs_ += logs_.back();
    sum += v;
  }
  sorted_logs_.reserve(sorted_.size());
  for (double v : sorted_) sorted_logs_.push_back(std::log(v));
  mean_ = sum / static_cast<double>(values_.size());
}

double Sample::stddev() const noexcept {
  double ss = 0.0;
  for (double v : values_) ss += (v - mean_) * (v - mean_);
  return std::sqrt(ss / static_cast<double>(values_.size() - 1));
}

Sample Sample::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Sample(std::move(out));
}

}  // namespace frechet
