#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "frechet/classical.hpp"
#include "frechet/random.hpp"
#include "frechet/sample.hpp"

// Objective-Bayes inference under the prior pi(lambda, alpha) = 1 / (lambda alpha).
namespace frechet {

struct McmcConfig {
  int iterations = 5500;  // R
  int burn_in = 500;
  int jump = 5;
  double kernel_b = 1.0;  // proposal Gamma(b * alpha, rate b)
  std::uint64_t seed = 2018;
  double geweke_level = 1.96;

  void validate() const;
};

// Log marginal posterior of alpha up to a constant:
//   (n-2) log(alpha) - alpha sum log t - n log(sum t^-alpha).
double log_marginal_posterior_alpha(double alpha, const Sample& s);
// Same kernel on raw observations; allows n = 1 for propriety checks.
double log_marginal_posterior_alpha(double alpha, std::span<const double> values);

// Quantile of the conditional lambda | alpha ~ Gamma(n, rate sum t^-alpha).
double conditional_lambda_quantile(double prob, double alpha, const Sample& s);

// Impropriety condition for the posterior mean of lambda:
// prod(t_i / min) <= min, i.e. sum log t - (n+1) log(min) <= 0.
struct ProprietyCheck {
  double log_product_ratio;  // sum log(t_i / min)
  double log_min;
  bool improper_proven;
};
ProprietyCheck posterior_mean_condition(const Sample& s);
// false when impropriety is proven, true otherwise.
bool posterior_mean_proper(const Sample& s);

// Raw M-H output: states[0] is the starting value, states[k] the state after
// step k (so R + 1 entries).
struct MhRun {
  std::vector<double> states;
  int accepted = 0;
  double acceptance_rate() const noexcept {
    return states.size() > 1 ? static_cast<double>(accepted) / static_cast<double>(states.size() - 1)
                             : 0.0;
  }
};

// Log acceptance ratio for a move current -> proposal, Hastings-corrected
// for the Gamma(b x, rate b) kernel.
double mh_log_ratio(double lp_current, double lp_proposal, double current, double proposal,
                    double kernel_b);

// Metropolis-Hastings on (0, inf) with a Gamma(b x, rate b) proposal centred
// at the current state x, plus the Hastings correction. Non-finite ratios reject.
MhRun metropolis_hastings(const std::function<double(double)>& log_target, double start,
                          int iterations, double kernel_b, Rng& rng);

// Keeps states at 1-based positions burn, burn + jump, ... <= R.
std::vector<double> thin_chain(std::span<const double> states, int burn_in, int jump);

struct PosteriorChain {
  std::vector<double> alpha_draws;
  double alpha_start = 0.0;
  double lambda_median = 0.0;
  double acceptance_rate = 0.0;
  double geweke_z = 0.0;
  bool geweke_defined = false;
  McmcConfig config;
  bool mean_proper = true;  // false when impropriety is proven

  bool geweke_accepted() const noexcept {
    return geweke_defined && std::abs(geweke_z) < config.geweke_level;
  }
};

PosteriorChain mh_sample(const Sample& s, const McmcConfig& cfg);

// (mean of first 10% - mean of last 50%) / sqrt(v1 + v2), each window's
// variance of the mean from 20 non-overlapping batch means.
// Needs at least 100 values; throws NumericError on zero variance.
double geweke_z(std::span<const double> chain);

// Quantile by linear interpolation between order statistics
// (h = (n - 1) p), matching the usual default of statistical packages.
double chain_quantile(std::span<const double> draws, double prob);

struct PosteriorSummary {
  FrechetParams point;
  ParamIntervals cri95;
};
// Alpha from the chain; lambda from Gamma(n, sum t^-alpha_median) quantiles.
PosteriorSummary posterior_summary(const PosteriorChain& chain, const Sample& s);

}  // namespace frechet
