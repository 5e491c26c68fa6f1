#include "frechet/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace frechet {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

class Minimizer {
 public:
  Minimizer(const Objective& f, const NelderMeadOptions& opt) : f_(f), opt_(opt) {}

  double eval(std::span<const double> x) {
    ++evaluations_;
    const double v = f_(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }

  Simplex build(const std::vector<double>& centre) {
    Simplex s;
    s.points.push_back(centre);
    for (std::size_t j = 0; j < centre.size(); ++j) {
      auto p = centre;
      p[j] += opt_.initial_step;
      s.points.push_back(std::move(p));
    }
    for (const auto& p : s.points) s.values.push_back(eval(p));
    return s;
  }

  // Runs until the convergence test passes or the iteration budget is spent.
  bool run(Simplex& s, int& iterations) {
    const std::size_t dim = s.points.front().size();
    std::vector<std::size_t> order(s.points.size());
    std::vector<double> centroid(dim), trial(dim), trial2(dim);

    while (iterations < opt_.max_iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[order.size() - 2];

      if (converged(s, best)) return true;
      ++iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        if (k == worst) continue;
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.points[k][j];
      }
      for (double& c : centroid) c /= static_cast<double>(dim);

      auto along = [&](double coef, std::vector<double>& out) {
        for (std::size_t j = 0; j < dim; ++j) {
          out[j] = centroid[j] + coef * (centroid[j] - s.points[worst][j]);
        }
      };

      along(kReflect, trial);
      const double fr = eval(trial);
      if (fr < s.values[best]) {
        along(kExpand, trial2);
        const double fe = eval(trial2);
        if (fe < fr) {
          s.points[worst] = trial2;
          s.values[worst] = fe;
        } else {
          s.points[worst] = trial;
          s.values[worst] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.points[worst] = trial;
        s.values[worst] = fr;
        continue;
      }
      // Outside contraction when the reflection beat the worst vertex, inside otherwise.
      const bool outside = fr < s.values[worst];
      along(outside ? kContract : -kContract, trial2);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : s.values[worst])) {
        s.points[worst] = trial2;
        s.values[worst] = fc;
        continue;
      }
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        if (k == best) continue;
        for (std::size_t j = 0; j < dim; ++j) {
          s.points[k][j] = s.points[best][j] + kShrink * (s.points[k][j] - s.points[best][j]);
        }
        s.values[k] = eval(s.points[k]);
      }
    }
    return false;
  }

  int evaluations() const noexcept { return evaluations_; }

 private:
  bool converged(const Simplex& s, std::size_t best) const {
    const double fb = s.values[best];
    if (!std::isfinite(fb)) return false;
    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      fspread = std::max(fspread, std::abs(s.values[k] - fb));
      for (std::size_t j = 0; j < s.points[k].size(); ++j) {
        const double scale = 1.0 + std::abs(s.points[best][j]);
        xspread = std::max(xspread, std::abs(s.points[k][j] - s.points[best][j]) / scale);
      }
    }
    return fspread <= opt_.f_tol * (1.0 + std::abs(fb)) && xspread <= opt_.x_tol;
  }

  const Objective& f_;
  const NelderMeadOptions& opt_;
  int evaluations_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
  Minimizer m(f, options);
  NelderMeadResult result;
  Simplex s = m.build(start);
  bool ok = m.run(s, result.iterations);

  auto best_of = [](const Simplex& sx) {
    return static_cast<std::size_t>(
        std::min_element(sx.values.begin(), sx.values.end()) - sx.values.begin());
  };

  for (int r = 0; ok && r < options.restarts; ++r) {
    const std::size_t b = best_of(s);
    const double before = s.values[b];
    Simplex fresh = m.build(s.points[b]);
    ok = m.run(fresh, result.iterations);
    const bool improved = before - fresh.values[best_of(fresh)] >
                          options.f_tol * (1.0 + std::abs(before));
    s = std::move(fresh);
    if (!improved) break;
  }

  const std::size_t b = best_of(s);
  result.x = s.points[b];
  result.value = s.values[b];
  result.evaluations = m.evaluations();
  result.converged = ok && std::isfinite(result.value);
  return result;
}

std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double step = h * (1.0 + std::abs(x[j]));
    probe[j] = x[j] + step;
    const double up = f(probe);
    probe[j] = x[j] - step;
    const double down = f(probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace frechet
