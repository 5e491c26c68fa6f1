#include "frechet/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "frechet/distribution.hpp"
#include "frechet/errors.hpp"

namespace frechet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Draw {
  bool failed = true;
  FrechetParams params;
  std::optional<ParamIntervals> interval;
};

// One replication: every method's result on the same sample.
std::vector<Draw> replicate(const StudyConfig& cfg, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const Sample s = draw_sample(cfg.truth, n, rng);
  std::vector<Draw> out(cfg.methods.size());
  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    const StudyMethod& sm = cfg.methods[m];
    Draw& d = out[m];
    if (sm.bayes) {
      McmcConfig mc = cfg.mcmc;
      mc.seed = splitmix64(seed ^ 0xb5ad4eceda1ce2a9ULL);
      try {
        const PosteriorChain chain = mh_sample(s, mc);
        const PosteriorSummary sum = posterior_summary(chain, s);
        d = {false, sum.point, sum.cri95};
      } catch (const Error&) {
        d.failed = true;
      }
      continue;
    }
    const FitOutcome fo = fit(sm.method, s, cfg.solver);
    if (fo.ok()) d = {false, fo.estimate->params, fo.estimate->ci95};
  }
  return out;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string StudyMethod::name() const { return bayes ? "BAYES" : std::string(to_string(method)); }

std::vector<StudyMethod> all_study_methods() {
  std::vector<StudyMethod> out;
  for (Method m : kAllMethods) out.push_back({false, m});
  out.push_back({true, Method::kMLE});
  return out;
}

std::optional<StudyMethod> parse_study_method(std::string_view name) {
  std::string low(name);
  for (char& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "bayes") return StudyMethod{true, Method::kMLE};
  if (auto m = parse_method(name)) return StudyMethod{false, *m};
  return std::nullopt;
}

void StudyConfig::validate() const {
  if (!truth.valid()) throw DomainError("true parameters must be positive and finite");
  if (replications < 1) throw DomainError("replications must be >= 1");
  if (sample_sizes.empty()) throw DomainError("at least one sample size is required");
  for (std::size_t n : sample_sizes) {
    if (n < 2) throw DomainError("sample sizes must be >= 2");
  }
  if (methods.empty()) throw DomainError("at least one method is required");
  solver.validate();
  if (std::any_of(methods.begin(), methods.end(), [](const StudyMethod& m) { return m.bayes; })) {
    mcmc.validate();
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t rep, std::uint64_t n) {
  // (rep, n) packs injectively while both fit in 32 bits; splitmix64 is a bijection.
  return splitmix64(splitmix64(master) + ((rep << 32) | (n & 0xffffffffULL)));
}

const StudyRow* StudyResult::find(std::string_view method, std::size_t n,
                                  std::string_view parameter) const {
  for (const auto& r : rows) {
    if (r.method == method && r.n == n && r.parameter == parameter) return &r;
  }
  return nullptr;
}

std::string StudyResult::to_csv() const {
  std::ostringstream os;
  os << "method,n,parameter,mre,mse,coverage,failures\n";
  for (const auto& r : rows) {
    os << r.method << ',' << r.n << ',' << r.parameter << ',' << number(r.mre) << ','
       << number(r.mse) << ',' << (r.coverage ? number(*r.coverage) : std::string()) << ','
       << r.failures << '\n';
  }
  return os.str();
}

StudyResult run_study(const StudyConfig& cfg) {
  cfg.validate();
  const std::size_t reps = static_cast<std::size_t>(cfg.replications);
  const std::size_t nm = cfg.methods.size();

  // records[size][rep][method], filled in any order, reduced in index order.
  std::vector<std::vector<std::vector<Draw>>> records(cfg.sample_sizes.size(),
                                                      std::vector<std::vector<Draw>>(reps));
  const std::size_t jobs = cfg.sample_sizes.size() * reps;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      const std::size_t k = j / reps;
      const std::size_t rep = j % reps;
      const std::size_t n = cfg.sample_sizes[k];
      records[k][rep] = replicate(cfg, n, derive_seed(cfg.master_seed, rep, n));
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  StudyResult result;
  result.config = cfg;
  for (std::size_t m = 0; m < nm; ++m) {
    for (std::size_t k = 0; k < cfg.sample_sizes.size(); ++k) {
      for (int pi = 0; pi < 2; ++pi) {
        const double truth = pi == 0 ? cfg.truth.lambda : cfg.truth.alpha;
        StudyRow row;
        row.method = cfg.methods[m].name();
        row.n = cfg.sample_sizes[k];
        row.parameter = pi == 0 ? "lambda" : "alpha";
        double rel = 0.0;
        double sq = 0.0;
        int covered = 0;
        int with_interval = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
          const Draw& d = records[k][rep][m];
          if (d.failed) {
            ++row.failures;
            continue;
          }
          const double est = pi == 0 ? d.params.lambda : d.params.alpha;
          rel += est / truth;
          sq += (est - truth) * (est - truth);
          ++row.used;
          if (d.interval) {
            ++with_interval;
            const Interval& iv = pi == 0 ? d.interval->lambda : d.interval->alpha;
            covered += iv.contains(truth) ? 1 : 0;
          }
        }
        if (row.used > 0) {
          row.mre = rel / row.used;
          row.mse = sq / row.used;
        } else {
          row.mre = std::nan("");
          row.mse = std::nan("");
        }
        if (with_interval > 0) row.coverage = static_cast<double>(covered) / with_interval;
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

}  // namespace frechet
