#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frechet/sample.hpp"

// Maximum-likelihood fits of the Frechet law and five competitors, ranked by
// information criteria.
namespace frechet {

enum class Distribution { kFrechet, kWeibull, kGamma, kLognormal, kGumbel, kGE };

inline constexpr std::array<Distribution, 6> kAllDistributions = {
    Distribution::kFrechet, Distribution::kWeibull, Distribution::kGamma,
    Distribution::kLognormal, Distribution::kGumbel, Distribution::kGE};

std::string_view to_string(Distribution d);
// Names of the two parameters in the order stored in FittedModel::params.
std::array<std::string_view, 2> parameter_names(Distribution d);

// Parameterisations:
//   Frechet   (lambda, alpha)  F = exp(-lambda t^-alpha)
//   Weibull   (shape k, scale s)  f = (k/s)(t/s)^(k-1) exp(-(t/s)^k)
//   Gamma     (shape a, rate b)
//   Lognormal (mu, sigma) of log t
//   Gumbel    (location mu, scale sigma)  F = exp(-exp(-(t-mu)/sigma))
//   GE        (alpha, lambda)  F = (1 - exp(-lambda t))^alpha
struct FittedModel {
  Distribution dist;
  std::array<double, 2> params;
  double loglik = 0.0;
  bool converged = false;
};

double model_log_density(Distribution d, const std::array<double, 2>& params, double t);
double model_log_likelihood(Distribution d, const std::array<double, 2>& params, const Sample& s);
double model_survival(Distribution d, const std::array<double, 2>& params, double t);

FittedModel fit_competitor(Distribution d, const Sample& s);

struct InformationCriteria {
  double aic;
  double bic;
  double aicc;
};
// Throws DomainError when n <= k + 1 (AICc undefined).
InformationCriteria information_criteria(double loglik, int k, std::size_t n);

struct ComparisonRow {
  FittedModel model;
  int k = 2;
  InformationCriteria ic;
};

struct ComparisonReport {
  std::size_t n = 0;
  std::vector<ComparisonRow> rows;  // kAllDistributions order
  // Row indices sorted ascending by each criterion.
  std::vector<std::size_t> rank_aic;
  std::vector<std::size_t> rank_bic;
  std::vector<std::size_t> rank_aicc;

  const ComparisonRow& row(Distribution d) const;
  // True when `d` has the smallest value of all three criteria.
  bool minimises_all(Distribution d) const;
  std::string to_text_table() const;
};

ComparisonReport compare_models(const Sample& s);

struct SurvivalOverlay {
  std::vector<double> grid;
  std::vector<double> empirical;  // step function 1 - #{t_i <= t}/n on the grid
  std::vector<Distribution> models;
  std::vector<std::vector<double>> fitted;  // fitted[model][grid point]

  std::string to_csv() const;
};

// 1 - #{t_i <= t}/n.
double empirical_survival(const Sample& s, double t);

// Log-spaced grid over [min t / 2, 2 max t] with grid_size >= 2 points.
SurvivalOverlay survival_overlay(const Sample& s, const std::vector<FittedModel>& fits,
                                 std::size_t grid_size = 200);

}  // namespace frechet
