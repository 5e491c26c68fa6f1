#pragma once

#include <span>

namespace frechet::special {

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kPi = 3.14159265358979323846;

// log |Gamma(x)| for x > 0. Thread-safe (no signgam side effect).
double log_gamma(double x);
// Gamma(x) for x > 0.
double gamma(double x);

// Quantile of Gamma(shape, rate), i.e. density rate^a x^(a-1) e^(-rate x) / Gamma(a).
double gamma_quantile(double prob, double shape, double rate);
double gamma_log_pdf(double x, double shape, double rate);
double gamma_cdf(double x, double shape, double rate);

double normal_quantile(double prob);

// log(sum_i exp(-alpha * log_t[i])), evaluated without overflow.
double log_sum_pow_neg(std::span<const double> log_t, double alpha);

}  // namespace frechet::special
