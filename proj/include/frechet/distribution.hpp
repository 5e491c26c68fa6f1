#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "frechet/random.hpp"
#include "frechet/sample.hpp"

// Pure functions of the two-parameter Frechet law
//   f(t) = lambda alpha t^-(alpha+1) exp(-lambda t^-alpha),  F(t) = exp(-lambda t^-alpha).
// Powers t^-alpha are formed as exp(-alpha log t) throughout.
namespace frechet {

double log_pdf(double t, const FrechetParams& p);
double pdf(double t, const FrechetParams& p);
double cdf(double t, const FrechetParams& p);
// 1 - F(t), accurate in the upper tail.
double survival(double t, const FrechetParams& p);

// Clamping is opt-in; by default a probability outside (0,1) is a DomainError.
enum class QuantileDomain { kStrict, kClamp };
double quantile(double prob, const FrechetParams& p,
                QuantileDomain domain = QuantileDomain::kStrict);

// E[T^r] = lambda^(r/alpha) Gamma(1 - r/alpha); finite only when alpha > r.
double raw_moment(int r, const FrechetParams& p);

struct MeanVariance {
  double mean;
  double variance;
};
// Requires alpha > 2.
MeanVariance mean_variance(const FrechetParams& p);
// sqrt(Var) / E, a function of alpha alone; requires alpha > 2.
double coefficient_of_variation(double alpha);

struct LMoments {
  double l1;
  double l2;
};
// First two population L-moments; requires alpha > 1.
LMoments population_lmoments(const FrechetParams& p);
// Sample L-moments l1, l2 from the order statistics.
LMoments sample_lmoments(const Sample& s);

// Symmetric 2x2 matrix in (lambda, alpha) order.
struct Matrix2 {
  double a11;
  double a12;
  double a22;

  double determinant() const noexcept { return a11 * a22 - a12 * a12; }
  Matrix2 inverse() const;
};

// Expected information of n observations.
Matrix2 fisher_information(const FrechetParams& p, std::size_t n);

// eta1 = t^-alpha e^(-lambda t^-alpha), which equals -dF/dlambda.
// eta2 = lambda t^-alpha log(t) e^(-lambda t^-alpha), which equals +dF/dalpha.
struct EtaKernels {
  double eta1;
  double eta2;
};
EtaKernels eta_kernels(double t, const FrechetParams& p);

// Inverse-transform draws: t = quantile(U), U ~ Uniform(0,1).
Sample draw_sample(const FrechetParams& p, std::size_t n, Rng& rng);
Sample sample_from_uniforms(const FrechetParams& p, std::span<const double> uniforms);

}  // namespace frechet
