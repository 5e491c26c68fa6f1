#include "frechet/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "frechet/errors.hpp"
#include "frechet/special.hpp"

namespace frechet {

namespace {

constexpr int kGewekeBatches = 20;

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Variance of the window mean from non-overlapping batch means.
double batch_mean_variance(std::span<const double> x) {
  const std::size_t size = std::max<std::size_t>(1, x.size() / kGewekeBatches);
  const std::size_t batches = x.size() / size;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) means[b] = mean_of(x.subspan(b * size, size));
  const double m = mean_of(means);
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  const double var_batch = ss / static_cast<double>(batches - 1);
  return var_batch / static_cast<double>(batches);
}

}  // namespace

void McmcConfig::validate() const {
  if (iterations < 1) throw DomainError("MCMC iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) throw DomainError("burn-in must lie in [0, R)");
  if (jump < 1) throw DomainError("thinning jump must be >= 1");
  if (!(kernel_b > 0.0) || !std::isfinite(kernel_b)) throw DomainError("kernel b must be > 0");
  if (!(geweke_level > 0.0)) throw DomainError("Geweke level must be > 0");
}

double log_marginal_posterior_alpha(double alpha, std::span<const double> values) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be > 0");
  if (values.empty()) throw DomainError("posterior needs at least one observation");
  std::vector<double> logs(values.size());
  double sum_logs = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("observations must be > 0");
    logs[i] = std::log(values[i]);
    sum_logs += logs[i];
  }
  const double n = static_cast<double>(values.size());
  return (n - 2.0) * std::log(alpha) - alpha * sum_logs -
         n * special::log_sum_pow_neg(logs, alpha);
}

double log_marginal_posterior_alpha(double alpha, const Sample& s) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be > 0");
  const double n = static_cast<double>(s.size());
  return (n - 2.0) * std::log(alpha) - alpha * s.sum_logs() -
         n * special::log_sum_pow_neg(s.logs(), alpha);
}

double conditional_lambda_quantile(double prob, double alpha, const Sample& s) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be > 0");
  const double rate = std::exp(special::log_sum_pow_neg(s.logs(), alpha));
  return special::gamma_quantile(prob, static_cast<double>(s.size()), rate);
}

ProprietyCheck posterior_mean_condition(const Sample& s) {
  const double log_min = std::log(s.min());
  const double n = static_cast<double>(s.size());
  const double log_ratio = s.sum_logs() - n * log_min;
  return {log_ratio, log_min, log_ratio - log_min <= 0.0};
}

bool posterior_mean_proper(const Sample& s) { return !posterior_mean_condition(s).improper_proven; }

double mh_log_ratio(double lp_current, double lp_proposal, double current, double proposal,
                    double kernel_b) {
  return lp_proposal + special::gamma_log_pdf(current, kernel_b * proposal, kernel_b) -
         special::gamma_log_pdf(proposal, kernel_b * current, kernel_b) - lp_current;
}

MhRun metropolis_hastings(const std::function<double(double)>& log_target, double start,
                          int iterations, double kernel_b, Rng& rng) {
  if (!(start > 0.0) || !std::isfinite(start)) throw DomainError("chain start must be > 0");
  MhRun run;
  run.states.reserve(static_cast<std::size_t>(iterations) + 1);
  run.states.push_back(start);
  double current = start;
  double lp_current = log_target(current);
  for (int i = 0; i < iterations; ++i) {
    const double proposal = rng.gamma(kernel_b * current, kernel_b);
    double ratio = -std::numeric_limits<double>::infinity();
    double lp_proposal = -std::numeric_limits<double>::infinity();
    if (proposal > 0.0 && std::isfinite(proposal)) {
      lp_proposal = log_target(proposal);
      ratio = mh_log_ratio(lp_current, lp_proposal, current, proposal, kernel_b);
    }
    const double h = std::min(1.0, std::exp(ratio));
    const double u = rng.uniform();
    if (u < h && std::isfinite(ratio)) {
      current = proposal;
      lp_current = lp_proposal;
      ++run.accepted;
    }
    run.states.push_back(current);
  }
  return run;
}

std::vector<double> thin_chain(std::span<const double> states, int burn_in, int jump) {
  if (jump < 1) throw DomainError("thinning jump must be >= 1");
  std::vector<double> out;
  const long last = static_cast<long>(states.size()) - 1;  // R
  for (long pos = burn_in; pos <= last; pos += jump) {
    if (pos >= 1) out.push_back(states[static_cast<std::size_t>(pos - 1)]);
  }
  return out;
}

double geweke_z(std::span<const double> chain) {
  if (chain.size() < 100) {
    throw DomainError("Geweke diagnostic needs at least 100 draws, got " +
                      std::to_string(chain.size()));
  }
  const std::size_t n1 = chain.size() / 10;
  const std::size_t n2 = chain.size() / 2;
  const auto first = chain.first(n1);
  const auto last = chain.last(n2);
  const double v = batch_mean_variance(first) + batch_mean_variance(last);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw NumericError("Geweke diagnostic undefined: zero variance in a window");
  }
  return (mean_of(first) - mean_of(last)) / std::sqrt(v);
}

double chain_quantile(std::span<const double> draws, double prob) {
  if (draws.empty()) throw DomainError("quantile of an empty chain");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile probability must lie in [0,1]");
  std::vector<double> x(draws.begin(), draws.end());
  std::sort(x.begin(), x.end());
  const double h = static_cast<double>(x.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

PosteriorChain mh_sample(const Sample& s, const McmcConfig& cfg) {
  cfg.validate();
  PosteriorChain chain;
  chain.config = cfg;
  const double raw = lme_alpha_raw(s);
  chain.alpha_start = std::isfinite(raw) ? std::max(raw, 1.0) : 1.0;

  Rng rng(cfg.seed);
  const auto target = [&s](double a) { return log_marginal_posterior_alpha(a, s); };
  const MhRun run = metropolis_hastings(target, chain.alpha_start, cfg.iterations, cfg.kernel_b, rng);
  chain.acceptance_rate = run.acceptance_rate();
  chain.alpha_draws = thin_chain(run.states, cfg.burn_in, cfg.jump);

  try {
    chain.geweke_z = geweke_z(chain.alpha_draws);
    chain.geweke_defined = true;
  } catch (const Error&) {
    chain.geweke_defined = false;
  }
  chain.lambda_median = conditional_lambda_quantile(0.5, chain_quantile(chain.alpha_draws, 0.5), s);
  chain.mean_proper = posterior_mean_proper(s);
  return chain;
}

PosteriorSummary posterior_summary(const PosteriorChain& chain, const Sample& s) {
  if (chain.alpha_draws.empty()) throw DomainError("posterior summary of an empty chain");
  const double alpha = chain_quantile(chain.alpha_draws, 0.5);
  PosteriorSummary out;
  out.point = FrechetParams{conditional_lambda_quantile(0.5, alpha, s), alpha};
  out.cri95.alpha = {chain_quantile(chain.alpha_draws, 0.025),
                     chain_quantile(chain.alpha_draws, 0.975)};
  out.cri95.lambda = {conditional_lambda_quantile(0.025, alpha, s),
                      conditional_lambda_quantile(0.975, alpha, s)};
  return out;
}

}  // namespace frechet
