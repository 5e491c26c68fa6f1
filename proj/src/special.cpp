#include "frechet/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "frechet/errors.hpp"

namespace frechet::special {

namespace {

// Domain violations surface as our own exceptions, never as boost's.
using Policy = boost::math::policies::policy<
    boost::math::policies::domain_error<boost::math::policies::ignore_error>,
    boost::math::policies::pole_error<boost::math::policies::ignore_error>,
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::evaluation_error<boost::math::policies::ignore_error>>;

void require_prob(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("probability must lie in (0,1)");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  return boost::math::lgamma(x, Policy());
}

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma requires x > 0");
  return boost::math::tgamma(x, Policy());
}

double gamma_quantile(double prob, double shape, double rate) {
  require_prob(prob);
  if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("gamma quantile needs shape, rate > 0");
  return boost::math::gamma_p_inv(shape, prob, Policy()) / rate;
}

double gamma_log_pdf(double x, double shape, double rate) {
  if (!(x > 0.0) || !(shape > 0.0) || !(rate > 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
         boost::math::lgamma(shape, Policy());
}

double gamma_cdf(double x, double shape, double rate) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, rate * x, Policy());
}

double normal_quantile(double prob) {
  require_prob(prob);
  return boost::math::quantile(boost::math::normal_distribution<double, Policy>(), prob);
}

double log_sum_pow_neg(std::span<const double> log_t, double alpha) {
  double m = -std::numeric_limits<double>::infinity();
  for (double lt : log_t) m = std::max(m, -alpha * lt);
  double acc = 0.0;
  for (double lt : log_t) acc += std::exp(-alpha * lt - m);
  return m + std::log(acc);
}

}  // namespace frechet::special
