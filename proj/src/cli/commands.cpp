#include "frechet/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frechet/bayes.hpp"
#include "frechet/classical.hpp"
#include "frechet/cli/data_input.hpp"
#include "frechet/cli/manifest.hpp"
#include "frechet/comparison.hpp"
#include "frechet/errors.hpp"
#include "frechet/simulation.hpp"

namespace frechet::cli {

namespace {

using json = nlohmann::ordered_json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json interval_json(const Interval& iv) { return json::array({num(iv.lower), num(iv.upper)}); }

struct DataOptions {
  std::string data;
  std::string column;
  std::string out;
};

void add_data_options(CLI::App* sub, DataOptions& o) {
  sub->add_option("--data", o.data, "bundled:<name> or a file path")->required();
  sub->add_option("--column", o.column, "read this column of a CSV file");
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
}

struct Input {
  LoadedData data;
  Sample sample;
};

Input load(const DataOptions& o) {
  const auto ref = DatasetRef::parse(
      o.data, o.column.empty() ? std::nullopt : std::optional<std::string>(o.column));
  LoadedData d = load_dataset(ref);
  Sample s(d.values);
  return {std::move(d), std::move(s)};
}

RunManifest manifest_for(const std::string& command, const Input* in) {
  RunManifest m;
  m.command = command;
  if (in != nullptr) {
    m.dataset = in->data.label;
    m.dataset_fingerprint = fingerprint(in->data.values);
  }
  m.timestamp = utc_timestamp();
  return m;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("error writing '" + path + "'");
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

PlottingPosition parse_plotting(const std::string& name) {
  if (name == "mean-rank") return PlottingPosition::kMeanRank;
  if (name == "median-rank") return PlottingPosition::kMedianRank;
  if (name == "hazen") return PlottingPosition::kHazen;
  throw InputError("unknown plotting position '" + name + "'");
}

// ---- fit ----

struct FitOptions {
  DataOptions data;
  std::string methods = "mle,mme,lme,pce,lse,wlse,mps,cme,ade";
  std::string plotting = "mean-rank";
  SolverConfig solver;
};

json estimate_json(const FitOutcome& fo) {
  json j;
  j["method"] = std::string(to_string(fo.method));
  j["infeasible"] = fo.infeasible();
  j["converged"] = fo.ok();
  j["failure"] = fo.failure.empty() ? json(nullptr) : json(fo.failure);
  if (fo.estimate) {
    const Estimate& e = *fo.estimate;
    j["lambda"] = num(e.params.lambda);
    j["alpha"] = num(e.params.alpha);
    if (e.ci95) {
      j["ci95"] = {{"lambda", interval_json(e.ci95->lambda)}, {"alpha", interval_json(e.ci95->alpha)}};
    } else {
      j["ci95"] = nullptr;
    }
    j["diagnostics"] = {{"iterations", e.diagnostics.iterations},
                        {"objective", num(e.diagnostics.objective)},
                        {"stationarity", num(e.diagnostics.stationarity)},
                        {"converged", e.diagnostics.converged}};
  } else {
    j["lambda"] = nullptr;
    j["alpha"] = nullptr;
    j["ci95"] = nullptr;
    j["diagnostics"] = nullptr;
  }
  return j;
}

int cmd_fit(const FitOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  for (const auto& name : split_list(o.methods)) {
    const auto m = parse_method(name);
    if (!m) throw InputError("unknown method '" + name + "'");
    methods.push_back(*m);
  }
  if (methods.empty()) throw InputError("--methods is empty");
  SolverConfig cfg = o.solver;
  cfg.plotting = parse_plotting(o.plotting);
  cfg.validate();
  const Input in = load(o.data);

  RunManifest man = manifest_for("fit", &in);
  man.config = {{"methods", o.methods},
                {"plotting", o.plotting},
                {"alpha_bracket", json::array({cfg.alpha_lo, cfg.alpha_hi})},
                {"tol", cfg.tol},
                {"max_iter", cfg.max_iter}};

  json estimates = json::array();
  bool all_ok = true;
  for (Method m : methods) {
    const FitOutcome fo = fit(m, in.sample, cfg);
    all_ok = all_ok && fo.ok();
    if (!fo.ok()) err << "warning: " << to_string(m) << ": " << fo.failure << "\n";
    estimates.push_back(estimate_json(fo));
  }
  json doc;
  doc["manifest"] = man.to_json();
  doc["n"] = in.sample.size();
  doc["estimates"] = estimates;
  emit(doc, o.data.out, out);
  return all_ok ? kExitOk : kExitEstimatorFailure;
}

// ---- bayes ----

struct BayesOptions {
  DataOptions data;
  McmcConfig mcmc{15000, 500, 5, 1.0, 2018, 1.96};
  std::optional<std::uint64_t> seed;
};

int cmd_bayes(const BayesOptions& o, std::ostream& out, std::ostream& err) {
  McmcConfig cfg = o.mcmc;
  cfg.seed = resolve_seed(o.seed, cfg.seed);
  cfg.validate();
  const Input in = load(o.data);

  RunManifest man = manifest_for("bayes", &in);
  man.seed = cfg.seed;
  man.config = {{"iterations", cfg.iterations}, {"burn_in", cfg.burn_in},
                {"jump", cfg.jump},             {"kernel_b", cfg.kernel_b},
                {"geweke_level", cfg.geweke_level}};

  const PosteriorChain chain = mh_sample(in.sample, cfg);
  const PosteriorSummary sum = posterior_summary(chain, in.sample);
  const ProprietyCheck pc = posterior_mean_condition(in.sample);

  json doc;
  doc["manifest"] = man.to_json();
  doc["n"] = in.sample.size();
  doc["lambda"] = {{"median", num(sum.point.lambda)}, {"cri95", interval_json(sum.cri95.lambda)}};
  doc["alpha"] = {{"median", num(sum.point.alpha)}, {"cri95", interval_json(sum.cri95.alpha)}};
  doc["acceptance_rate"] = num(chain.acceptance_rate);
  doc["geweke_z"] = chain.geweke_defined ? num(chain.geweke_z) : json(nullptr);
  doc["geweke_accepted"] = chain.geweke_accepted();
  doc["chain_length"] = chain.alpha_draws.size();
  doc["alpha_start"] = num(chain.alpha_start);
  doc["mean_proper"] = chain.mean_proper;
  doc["propriety"] = {{"log_product_ratio", num(pc.log_product_ratio)},
                      {"product_ratio", num(std::exp(pc.log_product_ratio))},
                      {"min", num(std::exp(pc.log_min))},
                      {"improper_proven", pc.improper_proven}};
  emit(doc, o.data.out, out);

  if (!chain.mean_proper) {
    char msg[200];
    std::snprintf(msg, sizeof msg,
                  "warning: posterior mean of lambda is improper here (prod(t/min) = %.6g <= min = "
                  "%.6g); use the median\n",
                  std::exp(pc.log_product_ratio), std::exp(pc.log_min));
    err << msg;
  }
  if (!chain.geweke_accepted()) {
    err << "warning: Geweke diagnostic rejects convergence (|z| >= " << cfg.geweke_level << ")\n";
    return kExitDiagnosticFailure;
  }
  return kExitOk;
}

// ---- simulate ----

struct SimulateOptions {
  double lambda = 2.0;
  double alpha = 4.0;
  std::vector<std::size_t> sizes{20, 50, 100};
  int reps = 1000;
  std::optional<std::uint64_t> seed;
  std::string methods = "mle,mme,lme,pce,lse,wlse,mps,cme,ade,bayes";
  unsigned threads = 0;
  McmcConfig mcmc;
  std::string out;
};

json study_json(const StudyResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"method", row.method},
                    {"n", row.n},
                    {"parameter", row.parameter},
                    {"mre", num(row.mre)},
                    {"mse", num(row.mse)},
                    {"coverage", row.coverage ? num(*row.coverage) : json(nullptr)},
                    {"failures", row.failures},
                    {"used", row.used}});
  }
  return rows;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream&) {
  StudyConfig cfg;
  cfg.truth = FrechetParams{o.lambda, o.alpha};
  cfg.sample_sizes = o.sizes;
  cfg.replications = o.reps;
  cfg.master_seed = resolve_seed(o.seed, 2018);
  cfg.threads = o.threads;
  cfg.mcmc = o.mcmc;
  cfg.methods.clear();
  for (const auto& name : split_list(o.methods)) {
    const auto m = parse_study_method(name);
    if (!m) throw InputError("unknown method '" + name + "'");
    cfg.methods.push_back(*m);
  }
  cfg.validate();

  RunManifest man = manifest_for("simulate", nullptr);
  man.seed = cfg.master_seed;
  std::vector<std::size_t> sizes = cfg.sample_sizes;
  man.config = {{"lambda", o.lambda},
                {"alpha", o.alpha},
                {"n", sizes},
                {"reps", o.reps},
                {"methods", o.methods},
                {"mcmc", {{"iterations", o.mcmc.iterations},
                          {"burn_in", o.mcmc.burn_in},
                          {"jump", o.mcmc.jump},
                          {"kernel_b", o.mcmc.kernel_b}}}};

  const StudyResult res = run_study(cfg);
  json doc;
  doc["manifest"] = man.to_json();
  doc["rows"] = study_json(res);
  if (o.out.empty()) {
    emit(doc, "", out);
  } else {
    emit(doc, o.out + ".json", out);
    write_text(o.out + ".csv", res.to_csv());
    out << res.to_csv();
  }
  return kExitOk;
}

// ---- compare ----

struct CompareOptions {
  DataOptions data;
  std::size_t grid = 200;
};

int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  const Input in = load(o.data);
  RunManifest man = manifest_for("compare", &in);
  man.config = {{"grid", o.grid}};

  const ComparisonReport rep = compare_models(in.sample);
  json models = json::array();
  std::vector<FittedModel> fits;
  bool all_ok = true;
  for (const auto& r : rep.rows) {
    const auto names = parameter_names(r.model.dist);
    models.push_back({{"distribution", std::string(to_string(r.model.dist))},
                      {"params", {{std::string(names[0]), num(r.model.params[0])},
                                  {std::string(names[1]), num(r.model.params[1])}}},
                      {"loglik", num(r.model.loglik)},
                      {"k", r.k},
                      {"aic", num(r.ic.aic)},
                      {"bic", num(r.ic.bic)},
                      {"aicc", num(r.ic.aicc)},
                      {"converged", r.model.converged}});
    fits.push_back(r.model);
    if (!r.model.converged) {
      all_ok = false;
      err << "warning: " << to_string(r.model.dist) << " fit did not converge\n";
    }
  }
  auto names_of = [&](const std::vector<std::size_t>& idx) {
    json a = json::array();
    for (std::size_t i : idx) a.push_back(std::string(to_string(rep.rows[i].model.dist)));
    return a;
  };
  json doc;
  doc["manifest"] = man.to_json();
  doc["n"] = rep.n;
  doc["models"] = models;
  doc["ranking"] = {{"aic", names_of(rep.rank_aic)},
                    {"bic", names_of(rep.rank_bic)},
                    {"aicc", names_of(rep.rank_aicc)}};
  const SurvivalOverlay ov = survival_overlay(in.sample, fits, o.grid);
  if (o.data.out.empty()) {
    emit(doc, "", out);
  } else {
    emit(doc, o.data.out + ".json", out);
    write_text(o.data.out + "_survival.csv", ov.to_csv());
    out << rep.to_text_table();
  }
  return all_ok ? kExitOk : kExitEstimatorFailure;
}

template <typename F>
int guarded(F&& f, std::ostream& err) {
  try {
    return f();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DegenerateSampleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitEstimatorFailure;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frechet distribution estimation, Bayesian analysis and model comparison"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  FitOptions fit_o;
  auto* fit_cmd = app.add_subcommand("fit", "classical point estimates");
  add_data_options(fit_cmd, fit_o.data);
  fit_cmd->add_option("--methods", fit_o.methods, "comma-separated estimator names")
      ->capture_default_str();
  fit_cmd->add_option("--plotting", fit_o.plotting, "mean-rank, median-rank or hazen")
      ->capture_default_str();
  fit_cmd->add_option("--alpha-lo", fit_o.solver.alpha_lo)->capture_default_str();
  fit_cmd->add_option("--alpha-hi", fit_o.solver.alpha_hi)->capture_default_str();
  fit_cmd->add_option("--tol", fit_o.solver.tol)->capture_default_str();
  fit_cmd->add_option("--max-iter", fit_o.solver.max_iter)->capture_default_str();

  BayesOptions bayes_o;
  auto* bayes_cmd = app.add_subcommand("bayes", "posterior medians and credible intervals");
  add_data_options(bayes_cmd, bayes_o.data);
  bayes_cmd->add_option("--iterations", bayes_o.mcmc.iterations, "M-H iterations R")
      ->capture_default_str();
  bayes_cmd->add_option("--burn", bayes_o.mcmc.burn_in)->capture_default_str();
  bayes_cmd->add_option("--jump", bayes_o.mcmc.jump)->capture_default_str();
  bayes_cmd->add_option("--b", bayes_o.mcmc.kernel_b, "proposal concentration")
      ->capture_default_str();
  bayes_cmd->add_option("--geweke-level", bayes_o.mcmc.geweke_level)->capture_default_str();
  std::uint64_t bayes_seed = 0;
  auto* bayes_seed_opt = bayes_cmd->add_option("--seed", bayes_seed, "default: $FRECHET_SEED or 2018");

  SimulateOptions sim_o;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo study of the estimators");
  sim_cmd->add_option("--lambda", sim_o.lambda)->capture_default_str();
  sim_cmd->add_option("--alpha", sim_o.alpha)->capture_default_str();
  sim_cmd->add_option("--n", sim_o.sizes, "sample sizes")->delimiter(',');
  sim_cmd->add_option("--reps", sim_o.reps, "replications per sample size")->capture_default_str();
  sim_cmd->add_option("--methods", sim_o.methods)->capture_default_str();
  sim_cmd->add_option("--threads", sim_o.threads, "0 = all cores")->capture_default_str();
  sim_cmd->add_option("--iterations", sim_o.mcmc.iterations)->capture_default_str();
  sim_cmd->add_option("--burn", sim_o.mcmc.burn_in)->capture_default_str();
  sim_cmd->add_option("--jump", sim_o.mcmc.jump)->capture_default_str();
  sim_cmd->add_option("--out", sim_o.out, "write <out>.json and <out>.csv");
  std::uint64_t sim_seed = 0;
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "default: $FRECHET_SEED or 2018");

  CompareOptions cmp_o;
  auto* cmp_cmd = app.add_subcommand("compare", "information criteria against five competitors");
  add_data_options(cmp_cmd, cmp_o.data);
  cmp_cmd->add_option("--grid", cmp_o.grid, "survival grid points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (bayes_seed_opt->count() > 0) bayes_o.seed = bayes_seed;
  if (sim_seed_opt->count() > 0) sim_o.seed = sim_seed;

  if (*fit_cmd) return guarded([&] { return cmd_fit(fit_o, out, err); }, err);
  if (*bayes_cmd) return guarded([&] { return cmd_bayes(bayes_o, out, err); }, err);
  if (*sim_cmd) return guarded([&] { return cmd_simulate(sim_o, out, err); }, err);
  if (*cmp_cmd) return guarded([&] { return cmd_compare(cmp_o, out, err); }, err);
  return kExitUsage;
}

}  // namespace frechet::cli
