#pragma once

#include <functional>
#include <span>
#include <vector>

namespace frechet {

struct NelderMeadOptions {
  // Edge length of the initial simplex, per coordinate (absolute).
  double initial_step = 0.25;
  // Stop when the simplex values spread less than f_tol * (1 + |f_best|)
  // and its vertices lie within x_tol * (1 + |x_best|) of the best vertex.
  double f_tol = 1e-13;
  double x_tol = 1e-9;
  int max_iterations = 5000;
  // Fresh simplices built around the optimum after first convergence; guards
  // against collapse onto a non-stationary point.
  int restarts = 2;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Minimises `f` from `start`. Non-finite objective values are treated as +inf,
// so infeasible regions may be encoded by returning NaN or inf.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

// Central-difference gradient with step h * (1 + |x_j|).
std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x,
                                     double h = 1e-6);

}  // namespace frechet
