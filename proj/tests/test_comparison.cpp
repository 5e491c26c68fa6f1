#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "frechet/comparison.hpp"
#include "frechet/datasets.hpp"
#include "frechet/errors.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace frechet;

namespace {

Sample bundled(std::string_view name) {
  const auto v = datasets::bundled(name);
  return Sample(std::vector<double>(v->begin(), v->end()));
}

// Log densities written from the textbook formulas with std::tgamma.
double oracle_log_density(Distribution d, double a, double b, double t) {
  switch (d) {
    case Distribution::kFrechet: return std::log(oracle::frechet_pdf(t, a, b));
    case Distribution::kWeibull: return std::log(a / b * std::pow(t / b, a - 1) * std::exp(-std::pow(t / b, a)));
    case Distribution::kGamma:
      return std::log(std::pow(b, a) * std::pow(t, a - 1) * std::exp(-b * t) / std::tgamma(a));
    case Distribution::kLognormal:
      return std::log(std::exp(-std::pow(std::log(t) - a, 2) / (2 * b * b)) / (t * b * std::sqrt(2 * M_PI)));
    case Distribution::kGumbel: {
      const double z = (t - a) / b;
      return std::log(std::exp(-z - std::exp(-z)) / b);
    }
    case Distribution::kGE:
      return std::log(a * b * std::pow(1 - std::exp(-b * t), a - 1) * std::exp(-b * t));
  }
  return NAN;
}

}  // namespace

TEST(ModelDensityTest, MatchesFormulas) {
  for (Distribution d : kAllDistributions) {
    for (double t : {0.4, 1.0, 2.7, 9.0}) {
      const std::array<double, 2> p = d == Distribution::kGumbel ? std::array{2.0, 1.5}
                                    : d == Distribution::kLognormal ? std::array{0.3, 0.8}
                                                                    : std::array{1.7, 0.9};
      EXPECT_NEAR(model_log_density(d, p, t), oracle_log_density(d, p[0], p[1], t), 1e-12)
          << to_string(d) << " t=" << t;
    }
  }
}

TEST(ModelSurvivalTest, DerivativeIsMinusDensity) {
  for (Distribution d : kAllDistributions) {
    const std::array<double, 2> p = d == Distribution::kGumbel ? std::array{2.0, 1.5}
                                  : d == Distribution::kLognormal ? std::array{0.3, 0.8}
                                                                  : std::array{1.7, 0.9};
    for (double t : {0.5, 1.3, 3.0}) {
      const double h = 1e-5 * t;
      const double ds = (model_survival(d, p, t + h) - model_survival(d, p, t - h)) / (2 * h);
      EXPECT_NEAR(-ds, std::exp(model_log_density(d, p, t)), 1e-7) << to_string(d);
    }
  }
}

TEST(FitCompetitorTest, LognormalClosedForm) {
  const Sample s({1.0, std::exp(1.0), std::exp(2.0)});
  const FittedModel m = fit_competitor(Distribution::kLognormal, s);
  EXPECT_NEAR(m.params[0], 1.0, 1e-14);
  EXPECT_NEAR(m.params[1] * m.params[1], 2.0 / 3.0, 1e-14);
  EXPECT_TRUE(m.converged);
}

TEST(FitCompetitorTest, PerturbationLowersLikelihood) {
  const Sample s = bundled("may");
  for (Distribution d : kAllDistributions) {
    const FittedModel m = fit_competitor(d, s);
    ASSERT_TRUE(m.converged) << to_string(d);
    EXPECT_NEAR(m.loglik, model_log_likelihood(d, m.params, s), 1e-9);
    for (int j = 0; j < 2; ++j) {
      for (double f : {0.99, 1.01}) {
        auto q = m.params;
        q[j] *= f;
        EXPECT_LT(model_log_likelihood(d, q, s), m.loglik) << to_string(d) << " param " << j;
      }
    }
  }
}

TEST(FitCompetitorTest, StationaryByFiniteDifferences) {
  for (std::string_view month : datasets::kMonthly) {
    const Sample s = bundled(month);
    for (Distribution d : kAllDistributions) {
      const FittedModel m = fit_competitor(d, s);
      double norm2 = 0.0;
      for (int j = 0; j < 2; ++j) {
        // Relative step, derivative with respect to log-parameter.
        const double h = 1e-5;
        auto up = m.params, dn = m.params;
        up[j] *= std::exp(h);
        dn[j] *= std::exp(-h);
        const double g = (model_log_likelihood(d, up, s) - model_log_likelihood(d, dn, s)) / (2 * h);
        norm2 += g * g;
      }
      EXPECT_LT(std::sqrt(norm2), 1e-4 * s.size()) << month << ' ' << to_string(d);
    }
  }
}

TEST(InformationCriteriaTest, Formulas) {
  // -2 l = 354.06 for n = 40 and k = 2.
  const auto ic = information_criteria(-354.06 / 2.0, 2, 40);
  EXPECT_NEAR(ic.aic, 358.06, 1e-9);
  EXPECT_NEAR(ic.bic, 354.06 + 2.0 * std::log(40.0), 1e-9);
  EXPECT_NEAR(ic.bic, 361.44, 0.005);
  EXPECT_NEAR(ic.aicc, 358.06 + 12.0 / 37.0, 1e-9);
  EXPECT_NEAR(ic.aicc, 358.38, 0.005);
  const auto zero = information_criteria(-5.0, 0, 10);
  EXPECT_EQ(zero.aic, 10.0);
  EXPECT_EQ(zero.bic, 10.0);
  EXPECT_EQ(zero.aicc, 10.0);
  EXPECT_THROW(information_criteria(-1.0, 2, 3), DomainError);
  EXPECT_NO_THROW(information_criteria(-1.0, 2, 4));
}

TEST(CompareModelsTest, MayFrechetLikelihood) {
  const ComparisonReport rep = compare_models(bundled("may"));
  EXPECT_EQ(rep.n, 40u);
  EXPECT_NEAR(-2.0 * rep.row(Distribution::kFrechet).model.loglik, 354.06, 0.5);
}

TEST(CompareModelsTest, CriteriaIdentityOnEveryRow) {
  for (std::string_view month : datasets::kMonthly) {
    const ComparisonReport rep = compare_models(bundled(month));
    const double n = rep.n;
    for (const auto& r : rep.rows) {
      EXPECT_NEAR(r.ic.aic, -2 * r.model.loglik + 2 * r.k, 1e-9);
      EXPECT_NEAR(r.ic.bic, -2 * r.model.loglik + r.k * std::log(n), 1e-9);
      EXPECT_NEAR(r.ic.aicc, r.ic.aic + 2.0 * r.k * (r.k + 1) / (n - r.k - 1), 1e-9);
    }
  }
}

TEST(CompareModelsTest, ReferenceCriteriaAndRanking) {
  for (const auto& ref : reference::kCriteria) {
    const ComparisonReport rep = compare_models(bundled(ref.month));
    for (std::size_t i = 0; i < kAllDistributions.size(); ++i) {
      const auto& ic = rep.rows[i].ic;
      EXPECT_NEAR(ic.aic, ref.aic[i], 0.5) << ref.month << ' ' << to_string(kAllDistributions[i]);
      EXPECT_NEAR(ic.bic, ref.bic[i], 0.5) << ref.month << ' ' << to_string(kAllDistributions[i]);
      EXPECT_NEAR(ic.aicc, ref.aicc[i], 0.5) << ref.month << ' ' << to_string(kAllDistributions[i]);
    }
    EXPECT_TRUE(rep.minimises_all(Distribution::kFrechet)) << ref.month;
    EXPECT_EQ(rep.rank_aic.size(), 6u);
  }
}

TEST(CompareModelsTest, TextTable) {
  const std::string table = compare_models(bundled("may")).to_text_table();
  std::istringstream is(table);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, 7);
  EXPECT_NE(table.find("Frechet"), std::string::npos);
}

TEST(EmpiricalSurvivalTest, StepFunction) {
  const Sample s({1.0, 2.0, 2.0, 4.0});
  EXPECT_EQ(empirical_survival(s, 0.5), 1.0);
  EXPECT_EQ(empirical_survival(s, 1.0), 0.75);
  EXPECT_EQ(empirical_survival(s, 2.0), 0.25);
  EXPECT_EQ(empirical_survival(s, 4.0), 0.0);
}

TEST(SurvivalOverlayTest, GridAndColumns) {
  const Sample s = bundled("may");
  std::vector<FittedModel> fits;
  for (Distribution d : kAllDistributions) fits.push_back(fit_competitor(d, s));
  const SurvivalOverlay ov = survival_overlay(s, fits, 200);
  ASSERT_EQ(ov.grid.size(), 200u);
  EXPECT_NEAR(ov.grid.front(), s.min() / 2, 1e-9 * s.min());
  EXPECT_NEAR(ov.grid.back(), 2 * s.max(), 1e-9 * s.max());
  for (std::size_t i = 1; i < ov.grid.size(); ++i) EXPECT_LT(ov.grid[i - 1], ov.grid[i]);
  EXPECT_EQ(ov.empirical.front(), 1.0);
  EXPECT_EQ(ov.empirical.back(), 0.0);
  for (const auto& col : ov.fitted) {
    for (std::size_t i = 1; i < col.size(); ++i) EXPECT_LE(col[i], col[i - 1]);
  }
  std::istringstream csv(ov.to_csv());
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,empirical,Frechet,Weibull,Gamma,Lognormal,Gumbel,GE");
  EXPECT_THROW(survival_overlay(s, {}, 200), DomainError);
  EXPECT_THROW(survival_overlay(s, fits, 1), DomainError);
}

TEST(SurvivalOverlayTest, HalfAtFittedMedian) {
  const Sample s = bundled("june");
  const FittedModel m = fit_competitor(Distribution::kFrechet, s);
  const double median = oracle::frechet_quantile(0.5, m.params[0], m.params[1]);
  EXPECT_NEAR(model_survival(Distribution::kFrechet, m.params, median), 0.5, 1e-12);
}
