#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frechet/distribution.hpp"
#include "frechet/nelder_mead.hpp"
#include "frechet/sample.hpp"

// Frequentist point estimators for (lambda, alpha) and the asymptotic
// normal intervals that go with MLE and MPS.
namespace frechet {

enum class Method { kMLE, kMME, kLME, kPCE, kLSE, kWLSE, kMPS, kCME, kADE };

inline constexpr std::array<Method, 9> kAllMethods = {
    Method::kMLE, Method::kMME, Method::kLME, Method::kPCE, Method::kLSE,
    Method::kWLSE, Method::kMPS, Method::kCME, Method::kADE};

std::string_view to_string(Method m);
// Case-insensitive; accepts "pe" as an alias of "pce".
std::optional<Method> parse_method(std::string_view name);

// Probability attached to the i-th order statistic (i is 1-based).
enum class PlottingPosition {
  kMeanRank,    // i / (n + 1)
  kMedianRank,  // (i - 0.3) / (n + 0.4)
  kHazen,       // (i - 0.5) / n
};
double plotting_position(PlottingPosition rule, std::size_t i, std::size_t n);

struct SolverConfig {
  // Initial bracket for the MLE profile score; widened by doubling hi and
  // halving lo until the score changes sign.
  double alpha_lo = 0.1;
  double alpha_hi = 10.0;
  int max_bracket_expansions = 60;
  double tol = 1e-10;
  int max_iter = 5000;
  // Largest Newton step (log-parameter units) accepted as converged.
  double stationarity_tol = 1e-6;
  PlottingPosition plotting = PlottingPosition::kMeanRank;

  void validate() const;
};

struct Interval {
  double lower;
  double upper;
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
  double width() const noexcept { return upper - lower; }
};

struct ParamIntervals {
  Interval lambda;
  Interval alpha;
};

struct SolverDiagnostics {
  int iterations = 0;
  double objective = 0.0;
  // Stationarity certificate. Closed-form and root-finding fits: scaled
  // residual of their defining equations. Optimiser fits: length of the
  // Newton step H^-1 g in (log lambda, log alpha), g from the analytic
  // stationarity equations.
  double stationarity = 0.0;
  bool converged = false;
};

struct Estimate {
  Method method;
  FrechetParams params;
  std::optional<ParamIntervals> ci95;
  SolverDiagnostics diagnostics;
};

// Profile score G(alpha) = n/alpha - sum log t + n sum(t^-a log t) / sum(t^-a).
// Throws DegenerateSampleError on an all-equal sample.
double profile_score(double alpha, const Sample& s);

double log_likelihood(const FrechetParams& p, const Sample& s);

// Left-hand sides of the two likelihood equations
//   n/lambda - sum t^-alpha  and  n/alpha - sum log t + lambda sum t^-alpha log t.
std::array<double, 2> likelihood_equations(const FrechetParams& p, const Sample& s);

// Objectives that the non-closed-form estimators minimise (MPS: maximise).
double pce_objective(const FrechetParams& p, const Sample& s,
                     PlottingPosition rule = PlottingPosition::kMeanRank);

enum class DistanceKind { kLSE, kWLSE, kCME, kADE };
double min_distance_objective(DistanceKind kind, const FrechetParams& p, const Sample& s,
                              PlottingPosition rule = PlottingPosition::kMeanRank);

// log D_i for i = 1..n+1; a tied order statistic contributes log f instead.
std::vector<double> log_spacings(const FrechetParams& p, const Sample& s);
// D_i for i = 1..n+1 without tie substitution (these sum to one).
std::vector<double> spacings(const FrechetParams& p, const Sample& s);
// H = mean of log_spacings.
double mps_objective(const FrechetParams& p, const Sample& s);

// Bracket [lo, hi] with G(lo) > 0 > G(hi), grown from cfg.alpha_lo/alpha_hi.
std::array<double, 2> bracket_profile_root(const Sample& s, const SolverConfig& cfg = {});

Estimate fit_mle(const Sample& s, const SolverConfig& cfg = {});
Estimate fit_mme(const Sample& s, const SolverConfig& cfg = {});
Estimate fit_lme(const Sample& s);
Estimate fit_pce(const Sample& s, const SolverConfig& cfg = {});
Estimate fit_min_distance(const Sample& s, DistanceKind kind, const SolverConfig& cfg = {});
Estimate fit_mps(const Sample& s, const SolverConfig& cfg = {});

// Shape from the closed-form L-moment ratio, without the alpha > 1
// feasibility check. Non-finite or nonpositive when the ratio is degenerate.
double lme_alpha_raw(const Sample& s);

// Asymptotic normal intervals from the expected information at the estimate,
// lower ends truncated at zero. Only MLE and MPS carry this theory.
ParamIntervals asymptotic_ci(const Estimate& e, const Sample& s, double level = 0.95);

// Result of running one estimator where failure is data, not an exception.
struct FitOutcome {
  Method method;
  std::optional<Estimate> estimate;
  std::string failure;  // empty on success

  bool ok() const noexcept { return estimate.has_value() && estimate->diagnostics.converged; }
  bool infeasible() const noexcept { return !estimate.has_value(); }
};

FitOutcome fit(Method m, const Sample& s, const SolverConfig& cfg = {});

}  // namespace frechet
