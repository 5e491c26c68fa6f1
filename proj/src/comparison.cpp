#include "frechet/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "frechet/classical.hpp"
#include "frechet/distribution.hpp"
#include "frechet/errors.hpp"
#include "frechet/nelder_mead.hpp"
#include "frechet/special.hpp"

namespace frechet {

namespace {

constexpr double kLogTwoPi = 1.8378770664093453;

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Maps an unconstrained search point to the natural parameters.
std::array<double, 2> to_natural(Distribution d, std::span<const double> u) {
  if (d == Distribution::kGumbel || d == Distribution::kLognormal) return {u[0], std::exp(u[1])};
  return {std::exp(u[0]), std::exp(u[1])};
}

std::vector<double> to_search(Distribution d, const std::array<double, 2>& p) {
  if (d == Distribution::kGumbel || d == Distribution::kLognormal) return {p[0], std::log(p[1])};
  return {std::log(p[0]), std::log(p[1])};
}

double log_mean(const Sample& s) { return s.sum_logs() / static_cast<double>(s.size()); }

double log_sd(const Sample& s) {
  const double m = log_mean(s);
  double ss = 0.0;
  for (double lt : s.logs()) ss += (lt - m) * (lt - m);
  return std::sqrt(ss / static_cast<double>(s.size()));
}

// Starting points: moments where they exist in closed form, log-data otherwise.
std::array<double, 2> start_point(Distribution d, const Sample& s) {
  const double mean = s.mean();
  const double sd = s.stddev();
  switch (d) {
    case Distribution::kWeibull: {
      // Log t of a Weibull is Gumbel-min with scale 1/k.
      const double k = special::kPi / (std::sqrt(6.0) * log_sd(s));
      return {k, std::exp(log_mean(s) + special::kEulerGamma / k)};
    }
    case Distribution::kGamma:
      return {mean * mean / (sd * sd), mean / (sd * sd)};
    case Distribution::kGumbel: {
      const double sigma = sd * std::sqrt(6.0) / special::kPi;
      return {mean - special::kEulerGamma * sigma, sigma};
    }
    case Distribution::kGE:
      // Exponential special case alpha = 1.
      return {1.0, 1.0 / mean};
    case Distribution::kLognormal:
      return {log_mean(s), log_sd(s)};
    case Distribution::kFrechet:
      break;
  }
  return {1.0, 1.0};
}

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kFrechet: return "Frechet";
    case Distribution::kWeibull: return "Weibull";
    case Distribution::kGamma: return "Gamma";
    case Distribution::kLognormal: return "Lognormal";
    case Distribution::kGumbel: return "Gumbel";
    case Distribution::kGE: return "GE";
  }
  return "?";
}

std::array<std::string_view, 2> parameter_names(Distribution d) {
  switch (d) {
    case Distribution::kFrechet: return {"lambda", "alpha"};
    case Distribution::kWeibull: return {"shape", "scale"};
    case Distribution::kGamma: return {"shape", "rate"};
    case Distribution::kLognormal: return {"mu", "sigma"};
    case Distribution::kGumbel: return {"location", "scale"};
    case Distribution::kGE: return {"alpha", "lambda"};
  }
  return {"", ""};
}

double model_log_density(Distribution d, const std::array<double, 2>& p, double t) {
  const double a = p[0];
  const double b = p[1];
  switch (d) {
    case Distribution::kFrechet:
      return log_pdf(t, FrechetParams{a, b});
    case Distribution::kWeibull: {
      const double lz = std::log(t / b);
      return std::log(a / b) + (a - 1.0) * lz - std::exp(a * lz);
    }
    case Distribution::kGamma:
      return special::gamma_log_pdf(t, a, b);
    case Distribution::kLognormal: {
      const double z = (std::log(t) - a) / b;
      return -std::log(t) - std::log(b) - 0.5 * kLogTwoPi - 0.5 * z * z;
    }
    case Distribution::kGumbel: {
      const double z = (t - a) / b;
      return -std::log(b) - z - std::exp(-z);
    }
    case Distribution::kGE: {
      const double x = b * t;
      return std::log(a) + std::log(b) + (a - 1.0) * std::log(-std::expm1(-x)) - x;
    }
  }
  return std::nan("");
}

double model_log_likelihood(Distribution d, const std::array<double, 2>& params, const Sample& s) {
  double acc = 0.0;
  for (double t : s.values()) acc += model_log_density(d, params, t);
  return acc;
}

double model_survival(Distribution d, const std::array<double, 2>& p, double t) {
  const double a = p[0];
  const double b = p[1];
  switch (d) {
    case Distribution::kFrechet:
      return survival(t, FrechetParams{a, b});
    case Distribution::kWeibull:
      return std::exp(-std::pow(t / b, a));
    case Distribution::kGamma:
      return 1.0 - special::gamma_cdf(t, a, b);
    case Distribution::kLognormal:
      return 0.5 * std::erfc((std::log(t) - a) / (b * std::sqrt(2.0)));
    case Distribution::kGumbel:
      return -std::expm1(-std::exp(-(t - a) / b));
    case Distribution::kGE:
      return -std::expm1(a * std::log(-std::expm1(-b * t)));
  }
  return std::nan("");
}

FittedModel fit_competitor(Distribution d, const Sample& s) {
  FittedModel out{d, {0.0, 0.0}, 0.0, false};
  if (d == Distribution::kFrechet) {
    const Estimate e = fit_mle(s);
    out.params = {e.params.lambda, e.params.alpha};
    out.loglik = log_likelihood(e.params, s);
    out.converged = e.diagnostics.converged;
    return out;
  }
  if (d == Distribution::kLognormal) {
    out.params = {log_mean(s), log_sd(s)};
    if (!(out.params[1] > 0.0)) throw DegenerateSampleError("lognormal fit needs distinct values");
    out.loglik = model_log_likelihood(d, out.params, s);
    out.converged = true;
    return out;
  }
  const Objective nll = [&](std::span<const double> u) {
    return -model_log_likelihood(d, to_natural(d, u), s);
  };
  NelderMeadOptions opt;
  opt.max_iterations = 20000;
  opt.restarts = 4;
  const auto r = nelder_mead(nll, to_search(d, start_point(d, s)), opt);
  out.params = to_natural(d, r.x);
  out.loglik = -r.value;
  out.converged = r.converged;
  return out;
}

InformationCriteria information_criteria(double loglik, int k, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  if (!(nn > kk + 1.0)) throw DomainError("AICc needs n > k + 1");
  const double aic = -2.0 * loglik + 2.0 * kk;
  return {aic, -2.0 * loglik + kk * std::log(nn), aic + 2.0 * kk * (kk + 1.0) / (nn - kk - 1.0)};
}

const ComparisonRow& ComparisonReport::row(Distribution d) const {
  for (const auto& r : rows) {
    if (r.model.dist == d) return r;
  }
  throw DomainError("distribution not in report");
}

bool ComparisonReport::minimises_all(Distribution d) const {
  return !rows.empty() && rows[rank_aic.front()].model.dist == d &&
         rows[rank_bic.front()].model.dist == d && rows[rank_aicc.front()].model.dist == d;
}

std::string ComparisonReport::to_text_table() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %12s %12s %12s %10s %10s %10s\n", "Model", "param1",
                "param2", "loglik", "AIC", "BIC", "AICc");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %12.5g %12.5g %12.4f %10.2f %10.2f %10.2f\n",
                  std::string(to_string(r.model.dist)).c_str(), r.model.params[0],
                  r.model.params[1], r.model.loglik, r.ic.aic, r.ic.bic, r.ic.aicc);
    os << line;
  }
  return os.str();
}

ComparisonReport compare_models(const Sample& s) {
  ComparisonReport rep;
  rep.n = s.size();
  for (Distribution d : kAllDistributions) {
    ComparisonRow row;
    row.model = fit_competitor(d, s);
    row.k = 2;
    row.ic = information_criteria(row.model.loglik, row.k, s.size());
    rep.rows.push_back(row);
  }
  auto ranking = [&](auto key) {
    std::vector<std::size_t> idx(rep.rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return key(rep.rows[a].ic) < key(rep.rows[b].ic);
    });
    return idx;
  };
  rep.rank_aic = ranking([](const InformationCriteria& c) { return c.aic; });
  rep.rank_bic = ranking([](const InformationCriteria& c) { return c.bic; });
  rep.rank_aicc = ranking([](const InformationCriteria& c) { return c.aicc; });
  return rep;
}

double empirical_survival(const Sample& s, double t) {
  const auto sorted = s.sorted();
  const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
  return 1.0 - static_cast<double>(at_or_below) / static_cast<double>(sorted.size());
}

SurvivalOverlay survival_overlay(const Sample& s, const std::vector<FittedModel>& fits,
                                 std::size_t grid_size) {
  if (fits.empty()) throw DomainError("survival overlay needs at least one fitted model");
  if (grid_size < 2) throw DomainError("survival grid needs at least two points");
  SurvivalOverlay ov;
  const double lo = std::log(s.min() / 2.0);
  const double hi = std::log(2.0 * s.max());
  ov.grid.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    ov.grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1));
  }
  for (double t : ov.grid) ov.empirical.push_back(empirical_survival(s, t));
  for (const auto& f : fits) {
    ov.models.push_back(f.dist);
    std::vector<double> col;
    col.reserve(grid_size);
    for (double t : ov.grid) col.push_back(std::clamp(model_survival(f.dist, f.params, t), 0.0, 1.0));
    ov.fitted.push_back(std::move(col));
  }
  return ov;
}

std::string SurvivalOverlay::to_csv() const {
  std::ostringstream os;
  os << "t,empirical";
  for (Distribution d : models) os << ',' << to_string(d);
  os << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << number(grid[i]) << ',' << number(empirical[i]);
    for (const auto& col : fitted) os << ',' << number(col[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace frechet
