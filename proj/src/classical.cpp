#include "frechet/classical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>

#include "frechet/errors.hpp"
#include "frechet/special.hpp"

namespace frechet {

namespace {

constexpr double kLogFloor = -690.7755278982137;  // log(1e-300)
constexpr double kLogOneMinusCeil = -36.841361487904734;  // log(1e-16)

double as_double(std::size_t k) { return static_cast<double>(k); }

// x_i = lambda t_(i)^-alpha over the sorted sample.
std::vector<double> scaled_powers(const FrechetParams& p, const Sample& s) {
  const auto logs = s.sorted_logs();
  std::vector<double> x(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    x[i] = p.lambda * std::exp(-p.alpha * logs[i]);
  }
  return x;
}

FrechetParams from_log(std::span<const double> u) {
  return FrechetParams{std::exp(u[0]), std::exp(u[1])};
}

// Gradient of an objective in (log lambda, log alpha), from the eta-kernel
// stationarity equations of each estimator. x = lambda t^-a, so with
// F = e^-x:  dF/dlog(lambda) = -x F (= -lambda eta1)  and
//            dF/dlog(alpha)  = alpha x log(t) F (= alpha eta2).
using Gradient = std::function<std::array<double, 2>(const FrechetParams&)>;

std::array<double, 2> distance_gradient(DistanceKind kind, const FrechetParams& p,
                                        const Sample& s, PlottingPosition rule) {
  const std::size_t n = s.size();
  const auto logs = s.sorted_logs();
  const auto x = scaled_powers(p, s);
  double gu = 0.0;
  double gv = 0.0;
  if (kind == DistanceKind::kADE) {
    const double nn = as_double(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double c = 2.0 * as_double(k + 1) - 1.0;
      // log F(t_(i)) = -x_i
      gu += c * (-x[k]);
      gv += c * (p.alpha * x[k] * logs[k]);
      // log(1 - F(t_(n+1-i)))
      const std::size_t j = n - 1 - k;
      const double em1 = std::expm1(x[j]);
      gu += c * (x[j] / em1);
      gv += c * (-p.alpha * x[j] * logs[j] / em1);
    }
    return {-gu / nn, -gv / nn};
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    double target = 0.0;
    double weight = 1.0;
    switch (kind) {
      case DistanceKind::kLSE:
        target = plotting_position(rule, i, n);
        break;
      case DistanceKind::kWLSE:
        target = plotting_position(rule, i, n);
        weight = (as_double(n) + 1.0) * (as_double(n) + 1.0) * (as_double(n) + 2.0) /
                 (as_double(i) * (as_double(n) - as_double(i) + 1.0));
        break;
      case DistanceKind::kCME:
        target = (2.0 * as_double(i) - 1.0) / (2.0 * as_double(n));
        break;
      case DistanceKind::kADE:
        break;
    }
    const double F = std::exp(-x[k]);
    const double r = 2.0 * weight * (F - target);
    gu += r * (-x[k] * F);
    gv += r * (p.alpha * x[k] * logs[k] * F);
  }
  return {gu, gv};
}

std::array<double, 2> pce_gradient(const FrechetParams& p, const Sample& s,
                                   PlottingPosition rule) {
  const std::size_t n = s.size();
  const auto t = s.sorted();
  const double u = std::log(p.lambda);
  double gu = 0.0;
  double gv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double logL = std::log(-std::log(plotting_position(rule, k + 1, n)));
    const double q = std::exp(-(logL - u) / p.alpha);
    const double r = -2.0 * (t[k] - q) * q / p.alpha;
    gu += r;
    gv += r * (logL - u);
  }
  return {gu, gv};
}

// Gradient of -H.
std::array<double, 2> mps_gradient(const FrechetParams& p, const Sample& s) {
  const std::size_t n = s.size();
  const auto t = s.sorted();
  const auto logs = s.sorted_logs();
  const auto x = scaled_powers(p, s);
  const auto logd = log_spacings(p, s);
  auto dF = [&](std::size_t k) -> std::array<double, 2> {
    const double F = std::exp(-x[k]);
    return {-x[k] * F, p.alpha * x[k] * logs[k] * F};
  };
  double gu = 0.0;
  double gv = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const bool tie = i > 0 && i < n && t[i] == t[i - 1];
    if (tie) {
      gu += 1.0 - x[i];
      gv += 1.0 - p.alpha * logs[i] + p.alpha * x[i] * logs[i];
      continue;
    }
    std::array<double, 2> hi{0.0, 0.0};
    std::array<double, 2> lo{0.0, 0.0};
    if (i < n) hi = dF(i);
    if (i > 0) lo = dF(i - 1);
    const double inv_d = std::exp(-logd[i]);
    gu += (hi[0] - lo[0]) * inv_d;
    gv += (hi[1] - lo[1]) * inv_d;
  }
  const double scale = -1.0 / (as_double(n) + 1.0);
  return {gu * scale, gv * scale};
}

// Newton step length |H^-1 g| at the point; H from central differences of g.
// Infinite when H is not positive definite.
double newton_step_length(const Gradient& grad, const FrechetParams& p) {
  const double u = std::log(p.lambda);
  const double v = std::log(p.alpha);
  const auto g = grad(p);
  constexpr double h = 1e-5;
  const auto gu_p = grad(FrechetParams{std::exp(u + h), p.alpha});
  const auto gu_m = grad(FrechetParams{std::exp(u - h), p.alpha});
  const auto gv_p = grad(FrechetParams{p.lambda, std::exp(v + h)});
  const auto gv_m = grad(FrechetParams{p.lambda, std::exp(v - h)});
  const double h11 = (gu_p[0] - gu_m[0]) / (2.0 * h);
  const double h22 = (gv_p[1] - gv_m[1]) / (2.0 * h);
  const double h12 = 0.5 * ((gu_p[1] - gu_m[1]) + (gv_p[0] - gv_m[0])) / (2.0 * h);
  const double det = h11 * h22 - h12 * h12;
  if (!(h11 > 0.0) || !(det > 0.0) || !std::isfinite(det)) {
    return std::numeric_limits<double>::infinity();
  }
  const double du = (h22 * g[0] - h12 * g[1]) / det;
  const double dv = (-h12 * g[0] + h11 * g[1]) / det;
  return std::hypot(du, dv);
}

// Interior starting point for the 2-D searches: LME when feasible, else MLE.
FrechetParams starting_point(const Sample& s, const SolverConfig& cfg) {
  try {
    return fit_lme(s).params;
  } catch (const InfeasibleError&) {
    return fit_mle(s, cfg).params;
  }
}

Estimate minimise_2d(Method method, const std::function<double(const FrechetParams&)>& objective,
                     const Gradient& grad, const Sample& s, const SolverConfig& cfg, double sign) {
  NelderMeadOptions opt;
  opt.max_iterations = cfg.max_iter;
  opt.x_tol = cfg.tol;
  const Objective f = [&](std::span<const double> u) { return sign * objective(from_log(u)); };

  auto attempt = [&](const FrechetParams& start) {
    const auto r = nelder_mead(f, {std::log(start.lambda), std::log(start.alpha)}, opt);
    Estimate e{method, from_log(r.x), std::nullopt, {}};
    e.diagnostics.iterations = r.iterations;
    e.diagnostics.objective = sign * r.value;
    e.diagnostics.stationarity = newton_step_length(grad, e.params);
    e.diagnostics.converged = r.converged && e.diagnostics.stationarity <= cfg.stationarity_tol;
    return e;
  };

  Estimate best = attempt(starting_point(s, cfg));
  if (!best.diagnostics.converged) {
    Estimate retry = attempt(fit_mle(s, cfg).params);
    retry.diagnostics.iterations += best.diagnostics.iterations;
    if (retry.diagnostics.converged || sign * retry.diagnostics.objective <
                                           sign * best.diagnostics.objective) {
      best = retry;
    }
  }
  return best;
}

double mle_newton_derivative(double alpha, const Sample& s) {
  const auto logs = s.logs();
  double m = -std::numeric_limits<double>::infinity();
  for (double lt : logs) m = std::max(m, -alpha * lt);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double lt : logs) {
    const double w = std::exp(-alpha * lt - m);
    s0 += w;
    s1 += w * lt;
    s2 += w * lt * lt;
  }
  const double n = as_double(s.size());
  return -n / (alpha * alpha) - n * (s2 * s0 - s1 * s1) / (s0 * s0);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kMLE: return "MLE";
    case Method::kMME: return "MME";
    case Method::kLME: return "LME";
    case Method::kPCE: return "PCE";
    case Method::kLSE: return "LSE";
    case Method::kWLSE: return "WLSE";
    case Method::kMPS: return "MPS";
    case Method::kCME: return "CME";
    case Method::kADE: return "ADE";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "PE") up = "PCE";
  if (up == "ME") up = "MME";
  for (Method m : kAllMethods) {
    if (to_string(m) == up) return m;
  }
  return std::nullopt;
}

double plotting_position(PlottingPosition rule, std::size_t i, std::size_t n) {
  const double ii = as_double(i);
  const double nn = as_double(n);
  switch (rule) {
    case PlottingPosition::kMeanRank: return ii / (nn + 1.0);
    case PlottingPosition::kMedianRank: return (ii - 0.3) / (nn + 0.4);
    case PlottingPosition::kHazen: return (ii - 0.5) / nn;
  }
  return ii / (nn + 1.0);
}

void SolverConfig::validate() const {
  if (!(alpha_lo > 0.0) || !(alpha_lo < alpha_hi)) {
    throw DomainError("solver bracket must satisfy 0 < lo < hi");
  }
  if (!(tol > 0.0) || !(stationarity_tol > 0.0)) throw DomainError("solver tolerances must be > 0");
  if (max_iter < 1 || max_bracket_expansions < 0) throw DomainError("solver iteration limits invalid");
}

double profile_score(double alpha, const Sample& s) {
  if (s.all_equal()) throw DegenerateSampleError("profile score undefined: all observations equal");
  if (!(alpha > 0.0)) throw DomainError("profile score needs alpha > 0");
  const auto logs = s.logs();
  double m = -std::numeric_limits<double>::infinity();
  for (double lt : logs) m = std::max(m, -alpha * lt);
  double s0 = 0.0;
  double s1 = 0.0;
  for (double lt : logs) {
    const double w = std::exp(-alpha * lt - m);
    s0 += w;
    s1 += w * lt;
  }
  const double n = as_double(s.size());
  return n / alpha - s.sum_logs() + n * s1 / s0;
}

double log_likelihood(const FrechetParams& p, const Sample& s) {
  double acc = 0.0;
  for (double lt : s.logs()) acc += std::exp(-p.alpha * lt);
  const double n = as_double(s.size());
  return n * std::log(p.lambda) + n * std::log(p.alpha) - (p.alpha + 1.0) * s.sum_logs() -
         p.lambda * acc;
}

std::array<double, 2> likelihood_equations(const FrechetParams& p, const Sample& s) {
  double sp = 0.0;
  double spl = 0.0;
  for (double lt : s.logs()) {
    const double w = std::exp(-p.alpha * lt);
    sp += w;
    spl += w * lt;
  }
  const double n = as_double(s.size());
  return {n / p.lambda - sp, n / p.alpha - s.sum_logs() + p.lambda * spl};
}

double pce_objective(const FrechetParams& p, const Sample& s, PlottingPosition rule) {
  const auto t = s.sorted();
  const std::size_t n = t.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = t[k] - quantile(plotting_position(rule, k + 1, n), p);
    acc += r * r;
  }
  return acc;
}

double min_distance_objective(DistanceKind kind, const FrechetParams& p, const Sample& s,
                              PlottingPosition rule) {
  const std::size_t n = s.size();
  const double nn = as_double(n);
  const auto x = scaled_powers(p, s);
  if (kind == DistanceKind::kADE) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = 2.0 * as_double(k + 1) - 1.0;
      const double log_f = std::max(-x[k], kLogFloor);
      const double log_sf =
          std::max(std::log(-std::expm1(-x[n - 1 - k])), kLogOneMinusCeil);
      acc += c * (log_f + log_sf);
    }
    return -nn - acc / nn;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    const double F = std::exp(-x[k]);
    double r = 0.0;
    switch (kind) {
      case DistanceKind::kLSE:
        r = F - plotting_position(rule, i, n);
        acc += r * r;
        break;
      case DistanceKind::kWLSE:
        r = F - plotting_position(rule, i, n);
        acc += (nn + 1.0) * (nn + 1.0) * (nn + 2.0) / (as_double(i) * (nn - as_double(i) + 1.0)) *
               r * r;
        break;
      case DistanceKind::kCME:
        r = F - (2.0 * as_double(i) - 1.0) / (2.0 * nn);
        acc += r * r;
        break;
      case DistanceKind::kADE:
        break;
    }
  }
  return kind == DistanceKind::kCME ? acc + 1.0 / (12.0 * nn) : acc;
}

std::vector<double> spacings(const FrechetParams& p, const Sample& s) {
  const auto x = scaled_powers(p, s);
  std::vector<double> d;
  d.reserve(x.size() + 1);
  double prev = 0.0;
  for (double xi : x) {
    const double F = std::exp(-xi);
    d.push_back(F - prev);
    prev = F;
  }
  d.push_back(1.0 - prev);
  return d;
}

std::vector<double> log_spacings(const FrechetParams& p, const Sample& s) {
  const auto t = s.sorted();
  const auto x = scaled_powers(p, s);
  const std::size_t n = t.size();
  std::vector<double> out(n + 1);
  out[0] = -x[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (t[i] == t[i - 1]) {
      out[i] = log_pdf(t[i], p);
    } else {
      // F_i - F_{i-1} = F_i (1 - e^-(x_{i-1} - x_i))
      out[i] = -x[i] + std::log(-std::expm1(-(x[i - 1] - x[i])));
    }
  }
  out[n] = std::log(-std::expm1(-x[n - 1]));
  return out;
}

double mps_objective(const FrechetParams& p, const Sample& s) {
  const auto logd = log_spacings(p, s);
  double acc = 0.0;
  for (double v : logd) acc += v;
  return acc / as_double(logd.size());
}

std::array<double, 2> bracket_profile_root(const Sample& s, const SolverConfig& cfg) {
  double lo = cfg.alpha_lo;
  double hi = cfg.alpha_hi;
  int expansions = 0;
  while (profile_score(hi, s) > 0.0) {
    if (++expansions > cfg.max_bracket_expansions) {
      throw NumericError("MLE bracket expansion failed: score positive at alpha=" +
                         std::to_string(hi));
    }
    lo = hi;
    hi *= 2.0;
  }
  while (profile_score(lo, s) < 0.0) {
    if (++expansions > cfg.max_bracket_expansions) {
      throw NumericError("MLE bracket expansion failed: score negative at alpha=" +
                         std::to_string(lo));
    }
    hi = lo;
    lo *= 0.5;
  }
  return {lo, hi};
}

Estimate fit_mle(const Sample& s, const SolverConfig& cfg) {
  if (s.all_equal()) throw DegenerateSampleError("MLE undefined: all observations equal");
  auto [lo, hi] = bracket_profile_root(s, cfg);

  // G is strictly decreasing: bisect, then polish with Newton inside the bracket.
  int iterations = 0;
  while (hi - lo > cfg.tol * hi && iterations < cfg.max_iter) {
    const double mid = 0.5 * (lo + hi);
    (profile_score(mid, s) > 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  double alpha = 0.5 * (lo + hi);
  for (int k = 0; k < 4; ++k) {
    const double g = profile_score(alpha, s);
    if (g == 0.0) break;
    const double next = alpha - g / mle_newton_derivative(alpha, s);
    if (!(next > 0.0) || !std::isfinite(next)) break;
    const double before = std::abs(g);
    if (std::abs(profile_score(next, s)) >= before) break;
    alpha = next;
    ++iterations;
  }

  const double n = as_double(s.size());
  const double lambda = std::exp(std::log(n) - special::log_sum_pow_neg(s.logs(), alpha));
  Estimate e{Method::kMLE, FrechetParams{lambda, alpha}, std::nullopt, {}};
  const auto eq = likelihood_equations(e.params, s);
  e.diagnostics.iterations = iterations;
  e.diagnostics.objective = log_likelihood(e.params, s);
  e.diagnostics.stationarity = std::max(std::abs(eq[0]) * lambda, std::abs(eq[1]) * alpha) / n;
  e.diagnostics.converged = e.diagnostics.stationarity < 1e-8;
  e.ci95 = asymptotic_ci(e, s, 0.95);
  return e;
}

Estimate fit_mme(const Sample& s, const SolverConfig& cfg) {
  const double target = s.stddev() / s.mean();
  // CV(alpha) falls from +inf at alpha -> 2+ towards 0 as alpha -> inf.
  double lo = 2.0 + 1e-8;
  double hi = 1e3;
  const auto residual = [&](double a) { return coefficient_of_variation(a) - target; };
  if (!(residual(lo) > 0.0) || !(residual(hi) < 0.0)) {
    throw InfeasibleError("MME infeasible: sample CV " + std::to_string(target) +
                          " has no matching alpha in (2, 1000)");
  }
  int iterations = 0;
  while (hi - lo > cfg.tol * hi && iterations < cfg.max_iter) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  const double alpha = 0.5 * (lo + hi);
  const double lambda =
      std::exp(alpha * (std::log(s.mean()) - special::log_gamma(1.0 - 1.0 / alpha)));
  Estimate e{Method::kMME, FrechetParams{lambda, alpha}, std::nullopt, {}};
  e.diagnostics.iterations = iterations;
  e.diagnostics.objective = residual(alpha);
  e.diagnostics.stationarity = std::abs(e.diagnostics.objective) / std::max(1.0, target);
  // Bisection to relative width tol pins alpha; the residual scales with dCV/dalpha.
  e.diagnostics.converged = (hi - lo) <= cfg.tol * hi * 1.0000001;
  return e;
}

double lme_alpha_raw(const Sample& s) {
  // Exact ratio is 1 here; round-off in the sums would give a huge finite alpha.
  if (s.all_equal()) return std::numeric_limits<double>::infinity();
  const auto t = s.sorted();
  const double n = as_double(t.size());
  double weighted = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) weighted += as_double(k) * t[k];
  const double log2 = std::log(2.0);
  return log2 / (log2 + std::log(weighted) - std::log(n * (n - 1.0) * s.mean()));
}

Estimate fit_lme(const Sample& s) {
  const double alpha = lme_alpha_raw(s);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InfeasibleError("LME invalid: L-moment ratio gives nonpositive or infinite alpha");
  }
  if (!(alpha > 1.0)) {
    throw InfeasibleError("LME infeasible: alpha=" + std::to_string(alpha) +
                          " <= 1 leaves lambda undefined");
  }
  const double lambda =
      std::exp(alpha * (std::log(s.mean()) - special::log_gamma(1.0 - 1.0 / alpha)));
  Estimate e{Method::kLME, FrechetParams{lambda, alpha}, std::nullopt, {}};
  e.diagnostics.converged = true;
  return e;
}

Estimate fit_pce(const Sample& s, const SolverConfig& cfg) {
  return minimise_2d(
      Method::kPCE, [&](const FrechetParams& p) { return pce_objective(p, s, cfg.plotting); },
      [&](const FrechetParams& p) { return pce_gradient(p, s, cfg.plotting); }, s, cfg, 1.0);
}

Estimate fit_min_distance(const Sample& s, DistanceKind kind, const SolverConfig& cfg) {
  Method m = Method::kLSE;
  switch (kind) {
    case DistanceKind::kLSE: m = Method::kLSE; break;
    case DistanceKind::kWLSE: m = Method::kWLSE; break;
    case DistanceKind::kCME: m = Method::kCME; break;
    case DistanceKind::kADE: m = Method::kADE; break;
  }
  return minimise_2d(
      m, [&](const FrechetParams& p) { return min_distance_objective(kind, p, s, cfg.plotting); },
      [&](const FrechetParams& p) { return distance_gradient(kind, p, s, cfg.plotting); }, s, cfg,
      1.0);
}

Estimate fit_mps(const Sample& s, const SolverConfig& cfg) {
  Estimate e = minimise_2d(
      Method::kMPS, [&](const FrechetParams& p) { return mps_objective(p, s); },
      [&](const FrechetParams& p) { return mps_gradient(p, s); }, s, cfg, -1.0);
  e.ci95 = asymptotic_ci(e, s, 0.95);
  return e;
}

ParamIntervals asymptotic_ci(const Estimate& e, const Sample& s, double level) {
  if (e.method != Method::kMLE && e.method != Method::kMPS) {
    throw DomainError("asymptotic intervals are defined for MLE and MPS only");
  }
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0,1)");
  const Matrix2 cov = fisher_information(e.params, s.size()).inverse();
  if (!(cov.a11 > 0.0) || !(cov.a22 > 0.0)) throw NumericError("information inverse not positive");
  const double z = special::normal_quantile(0.5 * (1.0 + level));
  const double hl = z * std::sqrt(cov.a11);
  const double ha = z * std::sqrt(cov.a22);
  return {{std::max(0.0, e.params.lambda - hl), e.params.lambda + hl},
          {std::max(0.0, e.params.alpha - ha), e.params.alpha + ha}};
}

FitOutcome fit(Method m, const Sample& s, const SolverConfig& cfg) {
  FitOutcome out{m, std::nullopt, {}};
  try {
    switch (m) {
      case Method::kMLE: out.estimate = fit_mle(s, cfg); break;
      case Method::kMME: out.estimate = fit_mme(s, cfg); break;
      case Method::kLME: out.estimate = fit_lme(s); break;
      case Method::kPCE: out.estimate = fit_pce(s, cfg); break;
      case Method::kLSE: out.estimate = fit_min_distance(s, DistanceKind::kLSE, cfg); break;
      case Method::kWLSE: out.estimate = fit_min_distance(s, DistanceKind::kWLSE, cfg); break;
      case Method::kMPS: out.estimate = fit_mps(s, cfg); break;
      case Method::kCME: out.estimate = fit_min_distance(s, DistanceKind::kCME, cfg); break;
      case Method::kADE: out.estimate = fit_min_distance(s, DistanceKind::kADE, cfg); break;
    }
    if (out.estimate && !out.estimate->diagnostics.converged) {
      out.failure = "solver did not converge";
    }
  } catch (const Error& err) {
    out.estimate.reset();
    out.failure = err.what();
  }
  return out;
}

}  // namespace frechet
