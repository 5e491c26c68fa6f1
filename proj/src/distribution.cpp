#include "frechet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "frechet/errors.hpp"
#include "frechet/special.hpp"

namespace frechet {

namespace {

void require_positive(double t) {
  if (!(t > 0.0)) throw DomainError("Frechet support is t > 0");
}

// lambda t^-alpha
double scaled_power(double t, const FrechetParams& p) {
  return p.lambda * std::exp(-p.alpha * std::log(t));
}

}  // namespace

double log_pdf(double t, const FrechetParams& p) {
  require_positive(t);
  const double lt = std::log(t);
  const double x = p.lambda * std::exp(-p.alpha * lt);
  return std::log(p.lambda) + std::log(p.alpha) - (p.alpha + 1.0) * lt - x;
}

double pdf(double t, const FrechetParams& p) { return std::exp(log_pdf(t, p)); }

double cdf(double t, const FrechetParams& p) {
  require_positive(t);
  return std::exp(-scaled_power(t, p));
}

double survival(double t, const FrechetParams& p) {
  require_positive(t);
  return -std::expm1(-scaled_power(t, p));
}

double quantile(double prob, const FrechetParams& p, QuantileDomain domain) {
  if (domain == QuantileDomain::kClamp) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    prob = std::clamp(prob, eps, 1.0 - eps);
  }
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("quantile probability must lie in (0,1)");
  // ((1/lambda) log(1/p))^(-1/alpha)
  const double base = -std::log(prob) / p.lambda;
  return std::exp(-std::log(base) / p.alpha);
}

double raw_moment(int r, const FrechetParams& p) {
  if (r < 1) throw DomainError("moment order must be a positive integer");
  if (!(p.alpha > r)) throw InfiniteMomentError("E[T^r] is infinite unless alpha > r");
  const double k = static_cast<double>(r) / p.alpha;
  return std::exp(k * std::log(p.lambda) + special::log_gamma(1.0 - k));
}

MeanVariance mean_variance(const FrechetParams& p) {
  if (!(p.alpha > 2.0)) {
    throw InfiniteMomentError(p.alpha > 1.0 ? "variance is infinite unless alpha > 2"
                                            : "mean and variance are infinite unless alpha > 1");
  }
  const double mean = raw_moment(1, p);
  const double scale2 = std::exp(2.0 * std::log(p.lambda) / p.alpha);
  const double lg1 = special::log_gamma(1.0 - 1.0 / p.alpha);
  const double lg2 = special::log_gamma(1.0 - 2.0 / p.alpha);
  // Gamma(1-2/a) - Gamma^2(1-1/a) = Gamma^2(1-1/a) * expm1(lg2 - 2 lg1)
  const double variance = scale2 * std::exp(2.0 * lg1) * std::expm1(lg2 - 2.0 * lg1);
  return {mean, variance};
}

double coefficient_of_variation(double alpha) {
  if (!(alpha > 2.0)) throw InfiniteMomentError("coefficient of variation needs alpha > 2");
  const double lg1 = special::log_gamma(1.0 - 1.0 / alpha);
  const double lg2 = special::log_gamma(1.0 - 2.0 / alpha);
  return std::sqrt(std::expm1(lg2 - 2.0 * lg1));
}

LMoments population_lmoments(const FrechetParams& p) {
  if (!(p.alpha > 1.0)) throw InfiniteMomentError("L-moments are infinite unless alpha > 1");
  const double mu1 = raw_moment(1, p);
  return {mu1, mu1 * std::expm1(std::log(2.0) / p.alpha)};
}

LMoments sample_lmoments(const Sample& s) {
  const auto sorted = s.sorted();
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) weighted += static_cast<double>(i) * sorted[i];
  const double l1 = s.mean();
  return {l1, 2.0 * weighted / (n * (n - 1.0)) - l1};
}

Matrix2 Matrix2::inverse() const {
  const double det = determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    throw NumericError("information matrix is singular");
  }
  return {a22 / det, -a12 / det, a11 / det};
}

Matrix2 fisher_information(const FrechetParams& p, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double c = 1.0 - special::kEulerGamma - std::log(p.lambda);
  const double pi2_6 = special::kPi * special::kPi / 6.0;
  return {nn / (p.lambda * p.lambda), nn * c / (p.lambda * p.alpha),
          nn / (p.alpha * p.alpha) * (pi2_6 + c * c)};
}

EtaKernels eta_kernels(double t, const FrechetParams& p) {
  require_positive(t);
  const double lt = std::log(t);
  const double pow_neg = std::exp(-p.alpha * lt);
  const double f = std::exp(-p.lambda * pow_neg);
  const double eta1 = pow_neg * f;
  return {eta1, p.lambda * lt * eta1};
}

Sample draw_sample(const FrechetParams& p, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (double& v : out) v = quantile(rng.uniform(), p);
  return Sample(std::move(out));
}

Sample sample_from_uniforms(const FrechetParams& p, std::span<const double> uniforms) {
  std::vector<double> out;
  out.reserve(uniforms.size());
  for (double u : uniforms) out.push_back(quantile(u, p));
  return Sample(std::move(out));
}

}  // namespace frechet
