// command-line front end: gen-synth | train | predict | sweep | bound-check
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nsvm/data.hpp"
#include "nsvm/eval.hpp"
#include "nsvm/loss.hpp"
#include "nsvm/model_io.hpp"
#include "nsvm/ops.hpp"
#include "nsvm/primal.hpp"
#include "nsvm/rng.hpp"
#include "nsvm/smo.hpp"
#include "nsvm/text.hpp"
#include "nsvm/theory.hpp"

namespace {

using nlohmann::json;

nsvm::IngestSchema default_schema() {
  nsvm::IngestSchema s;
  s.target_column = "y";
  s.viewpoint_column = "v";
  s.positive_target_value = "1";
  s.positive_viewpoint_value = "1";
  return s;
}

nsvm::Dataset load_data(const std::string& path, const std::string& schema_path) {
  const nsvm::IngestSchema schema =
      schema_path.empty() ? default_schema() : nsvm::load_schema(schema_path);
  return nsvm::ingest_csv(path, schema);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// shared solver knobs, resolved once and echoed into every output
struct SolverArgs {
  std::string solver = "primal";
  std::string kernel = "linear";
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;
  double lambda = 1.0;
  double eta = 0.0;
  // primal
  std::size_t max_iters = 20000;
  std::string step_rule = "inv-sqrt";
  double step_constant = 0.0;
  double tol = 1e-7;
  std::size_t patience = 200;
  double tie_alpha = 0.5;
  // dual
  double eps = 1e-3;
  std::size_t dual_max_iters = 10'000'000;
  std::size_t cache_mb = 64;
};

void add_solver_flags(CLI::App* cmd, SolverArgs& a, bool with_eta) {
  cmd->add_option("--solver", a.solver, "primal or dual")
      ->check(CLI::IsMember({"primal", "dual"}));
  cmd->add_option("--kernel", a.kernel, "dual solver kernel")
      ->check(CLI::IsMember({"linear", "rbf", "poly"}));
  cmd->add_option("--gamma", a.gamma, "rbf width");
  cmd->add_option("--degree", a.degree, "polynomial degree");
  cmd->add_option("--coef0", a.coef0, "polynomial offset");
  cmd->add_option("--lambda", a.lambda, "regularization weight");
  if (with_eta) cmd->add_option("--eta", a.eta, "neutralization weight");
  cmd->add_option("--max-iters", a.max_iters, "primal iteration cap");
  cmd->add_option("--step-rule", a.step_rule, "primal step rule")
      ->check(CLI::IsMember({"constant", "inv-sqrt", "inv-lambda-t"}));
  cmd->add_option("--step-const", a.step_constant, "primal step constant (0 = 1/lambda)");
  cmd->add_option("--tol", a.tol, "primal improvement tolerance");
  cmd->add_option("--patience", a.patience, "primal non-improvement window");
  cmd->add_option("--tie-alpha", a.tie_alpha, "subgradient tie coefficient");
  cmd->add_option("--eps", a.eps, "dual KKT tolerance");
  cmd->add_option("--dual-max-iters", a.dual_max_iters, "dual pair-update cap");
  cmd->add_option("--cache-mb", a.cache_mb, "dual kernel row cache (MiB)");
}

nsvm::StepRule step_rule_of(const std::string& name) {
  if (name == "constant") return nsvm::StepRule::constant;
  if (name == "inv-sqrt") return nsvm::StepRule::inv_sqrt;
  if (name == "inv-lambda-t") return nsvm::StepRule::inv_lambda_t;
  throw std::invalid_argument("unknown step rule: " + name);
}

nsvm::SubgradConfig primal_config(const SolverArgs& a) {
  nsvm::SubgradConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.step_rule = step_rule_of(a.step_rule);
  cfg.step_constant = a.step_constant;
  cfg.tol = a.tol;
  cfg.patience = a.patience;
  cfg.tie_alpha = a.tie_alpha;
  cfg.trace_stride = std::max<std::size_t>(1, a.max_iters / 1000);
  return cfg;
}

nsvm::SmoConfig smo_config(const SolverArgs& a) {
  nsvm::SmoConfig cfg;
  cfg.eps = a.eps;
  cfg.max_iters = a.dual_max_iters;
  cfg.cache_bytes = a.cache_mb << 20;
  return cfg;
}

nsvm::KernelSpec kernel_spec(const SolverArgs& a) {
  nsvm::KernelSpec spec;
  spec.kind = nsvm::kernel_kind_from_string(a.kernel);
  spec.gamma = a.gamma;
  spec.degree = a.degree;
  spec.coef0 = a.coef0;
  nsvm::validate(spec);
  return spec;
}

json solver_config_json(const SolverArgs& a) {
  json j;
  j["solver"] = a.solver;
  j["lambda"] = a.lambda;
  j["eta"] = a.eta;
  if (a.solver == "dual") {
    j["kernel"] = nsvm::to_json(kernel_spec(a));
    j["eps"] = a.eps;
    j["max_iters"] = a.dual_max_iters;
    j["cache_mb"] = a.cache_mb;
  } else {
    j["max_iters"] = a.max_iters;
    j["step_rule"] = a.step_rule;
    j["step_constant"] = a.step_constant;
    j["tol"] = a.tol;
    j["patience"] = a.patience;
    j["tie_alpha"] = a.tie_alpha;
  }
  return j;
}

// ---- gen-synth ----

struct GenArgs {
  std::size_t n = 0;
  std::size_t d = 10;
  std::uint64_t seed = 0;
  double noise_scale = 100.0;
  std::string out;
};

int cmd_gen_synth(const GenArgs& a) {
  nsvm::SynthConfig cfg;
  cfg.n = a.n;
  cfg.d = a.d;
  cfg.seed = a.seed;
  cfg.noise_scale = a.noise_scale;
  const nsvm::Dataset data = nsvm::gen_synthetic(cfg);
  nsvm::write_csv(data, a.out);
  json meta;
  meta["command"] = "gen-synth";
  meta["config"] = {{"n", a.n}, {"d", a.d}, {"seed", a.seed},
                    {"noise_scale", a.noise_scale}, {"out", a.out}};
  nsvm::write_json(a.out + ".meta.json", meta);
  std::cout << "wrote " << data.n << " samples, d=" << data.d << " to " << a.out << "\n";
  return 0;
}

// ---- train ----

struct TrainArgs {
  std::string data;
  std::string schema;
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
  SolverArgs solver;
};

int cmd_train(const TrainArgs& a) {
  const nsvm::Dataset data = load_data(a.data, a.schema);
  nsvm::Hyperparams hp;
  hp.lambda = a.solver.lambda;
  hp.eta = a.solver.eta;

  json config = solver_config_json(a.solver);
  config["data"] = a.data;
  config["schema"] = a.schema;
  config["seed"] = a.seed;

  json model_json;
  nsvm::SolveReport report;
  std::vector<double> train_scores(data.n);
  if (a.solver.solver == "primal") {
    auto [model, rep] = nsvm::solve_primal(data, hp, primal_config(a.solver));
    report = std::move(rep);
    nsvm::ops::decision_values(data, model.w, model.b, train_scores);
    model_json = nsvm::model_to_json(model, hp);
  } else {
    auto [model, rep] = nsvm::solve_smo(data, kernel_spec(a.solver), hp, smo_config(a.solver));
    report = std::move(rep);
    train_scores = nsvm::predict(model, data);
    model_json = nsvm::model_to_json(model, hp);
  }
  model_json["config"] = config;
  nsvm::write_json(a.out, model_json);

  json rep_json = nsvm::to_json(report);
  rep_json["config"] = config;
  const auto sn = nsvm::sign_neutrality(data, train_scores);
  const auto rn = nsvm::relaxed_neutrality(data, train_scores, nsvm::Norm::mean);
  rep_json["train_metrics"] = {
      {"risk", nsvm::empirical_risk(data, train_scores, nsvm::Norm::mean)},
      {"sign_neutrality", sn.value},
      {"sign_c_plus", sn.c_plus},
      {"relaxed_neutrality", rn.c_max},
  };
  if (hp.eta > 0.0) {
    const double limit = nsvm::corollary_bound(hp);
    rep_json["corollary"] = {{"limit", limit}, {"holds", rn.c_max <= limit + 1e-2}};
  }
  const std::string report_path = a.report.empty() ? a.out + ".report.json" : a.report;
  nsvm::write_json(report_path, rep_json);

  std::cout << "objective " << nsvm::format_sig9(report.best_objective) << ", termination "
            << nsvm::to_string(report.termination) << ", iterations " << report.iterations
            << "\n";
  return report.termination == nsvm::Termination::tol_reached ? 0 : 2;
}

// ---- predict ----

struct PredictArgs {
  std::string model;
  std::string data;
  std::string schema;
  std::string out;
};

int cmd_predict(const PredictArgs& a) {
  const nsvm::LoadedModel model = nsvm::load_model(a.model);
  const nsvm::Dataset data = load_data(a.data, a.schema);
  if (data.d != model.dim())
    throw std::runtime_error("dimension mismatch: model d=" + std::to_string(model.dim()) +
                             ", data d=" + std::to_string(data.d));
  std::ostringstream out;
  out << "score\n";
  for (std::size_t i = 0; i < data.n; ++i)
    out << nsvm::format_sig9(model.decision(data.input(i))) << "\n";
  write_text(a.out, out.str());
  std::cout << "wrote " << data.n << " scores to " << a.out << "\n";
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string data;
  std::string schema;
  std::string out;
  std::string json_out;
  std::string svg_out;
  bool pareto = false;
  std::vector<double> etas{0.0, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0};
  std::size_t folds = 5;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  SolverArgs solver;
};

std::string sweep_svg(const nsvm::SweepResult& result) {
  const auto kept = nsvm::pareto_keep(result.rows);
  std::vector<bool> is_kept(result.rows.size(), false);
  for (std::size_t k : kept) is_kept[k] = true;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : result.rows) {
    if (std::isnan(r.mean_auc) || std::isnan(r.mean_neutrality)) continue;
    xmin = std::min(xmin, r.mean_neutrality);
    xmax = std::max(xmax, r.mean_neutrality);
    ymin = std::min(ymin, r.mean_auc);
    ymax = std::max(ymax, r.mean_auc);
  }
  if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

  const double W = 640, H = 480, ML = 70, MR = 20, MT = 30, MB = 50;
  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  s << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
    << H - MB << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    s << "<line x1=\"" << px(fx) << "\" y1=\"" << H - MB << "\" x2=\"" << px(fx) << "\" y2=\""
      << H - MB + 5 << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << px(fx) << "\" y=\"" << H - MB + 18
      << "\" font-size=\"10\" text-anchor=\"middle\">" << nsvm::format_sig9(fx) << "</text>\n";
    s << "<line x1=\"" << ML - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ML << "\" y2=\""
      << py(fy) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << ML - 8 << "\" y=\"" << py(fy) + 3
      << "\" font-size=\"10\" text-anchor=\"end\">" << nsvm::format_sig9(fy) << "</text>\n";
  }
  s << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
    << "\" font-size=\"12\" text-anchor=\"middle\">test neutrality (sign)</text>\n";
  s << "<text x=\"16\" y=\"" << (MT + H - MB) / 2
    << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (MT + H - MB) / 2 << ")\">AUC</text>\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    if (std::isnan(r.mean_auc) || std::isnan(r.mean_neutrality)) continue;
    if (is_kept[i])
      s << "<circle cx=\"" << px(r.mean_neutrality) << "\" cy=\"" << py(r.mean_auc)
        << "\" r=\"4\" fill=\"black\"/>\n";
    else
      s << "<circle cx=\"" << px(r.mean_neutrality) << "\" cy=\"" << py(r.mean_auc)
        << "\" r=\"4\" fill=\"none\" stroke=\"#888888\"/>\n";
    s << "<text x=\"" << px(r.mean_neutrality) + 6 << "\" y=\"" << py(r.mean_auc) - 6
      << "\" font-size=\"9\">eta=" << nsvm::format_sig9(r.eta) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_sweep(const SweepArgs& a) {
  const nsvm::Dataset data = load_data(a.data, a.schema);
  nsvm::SweepConfig cfg;
  cfg.eta_grid = a.etas;
  cfg.lambda = a.solver.lambda;
  cfg.solver = a.solver.solver == "dual" ? nsvm::SolverKind::dual : nsvm::SolverKind::primal;
  cfg.kernel = kernel_spec(a.solver);
  cfg.folds = a.folds;
  cfg.repeats = a.repeats;
  cfg.seed = a.seed;
  cfg.primal = primal_config(a.solver);
  cfg.smo = smo_config(a.solver);

  const nsvm::SweepResult full = nsvm::run_sweep(data, cfg);
  const nsvm::SweepResult& written = a.pareto ? nsvm::pareto_filter(full) : full;

  json config = solver_config_json(a.solver);
  config["data"] = a.data;
  config["schema"] = a.schema;
  config["etas"] = a.etas;
  config["folds"] = a.folds;
  config["repeats"] = a.repeats;
  config["seed"] = a.seed;
  config["pareto"] = a.pareto;

  write_text(a.out, nsvm::sweep_to_csv(written));
  json meta;
  meta["command"] = "sweep";
  meta["config"] = config;
  nsvm::write_json(a.out + ".meta.json", meta);
  if (!a.json_out.empty()) {
    json j = nsvm::to_json(written);
    j["command"] = "sweep";
    j["config"] = config;
    nsvm::write_json(a.json_out, j);
  }
  if (!a.svg_out.empty()) write_text(a.svg_out, sweep_svg(full));

  std::size_t failed = 0;
  for (const auto& c : full.cells)
    if (!c.ok) ++failed;
  std::cout << "swept " << full.rows.size() << " eta values, " << full.cells.size()
            << " cells, " << failed << " failures\n";
  return 0;
}

// ---- bound-check ----

struct BoundArgs {
  std::string data;
  std::string schema;
  std::string out;
  std::vector<std::size_t> ns{125, 250, 500, 1000, 2000, 4000, 8000};
  std::vector<double> etas{0.1, 1.0, 10.0};
  std::size_t d = 10;
  double lambda_per_sample = 0.05;
  double delta = 0.05;
  std::size_t draws = 200;
  std::size_t folds = 5;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  SolverArgs solver;
};

int cmd_bound_check(const BoundArgs& a) {
  json out_json;
  out_json["command"] = "bound-check";
  json config = solver_config_json(a.solver);
  config["delta"] = a.delta;
  config["draws"] = a.draws;
  config["folds"] = a.folds;
  config["repeats"] = a.repeats;
  config["seed"] = a.seed;

  if (!a.data.empty()) {
    // single dataset: hold out one fold, train on the rest, certify
    const nsvm::Dataset data = load_data(a.data, a.schema);
    const auto splits = nsvm::kfold(data.n, a.folds, nsvm::derive_seed(a.seed, 0));
    const nsvm::Dataset train = nsvm::subset(data, splits[0].train);
    const nsvm::Dataset holdout = nsvm::subset(data, splits[0].test);
    nsvm::Hyperparams hp;
    hp.lambda = a.solver.lambda;
    hp.eta = a.solver.eta;
    auto [model, rep] = nsvm::solve_primal(train, hp, primal_config(a.solver));
    nsvm::BoundConfig bc;
    bc.delta = a.delta;
    bc.num_draws = a.draws;
    bc.seed = nsvm::derive_seed(a.seed, 1);
    const nsvm::BoundReport br = nsvm::neutrality_bound(model, train, holdout, bc);
    config["data"] = a.data;
    config["schema"] = a.schema;
    out_json["config"] = config;
    out_json["bound"] = nsvm::to_json(br);
    out_json["train_report"] = nsvm::to_json(rep);
    nsvm::write_json(a.out, out_json);
    std::cout << "bound " << nsvm::format_sig9(br.total_bound) << ", holdout "
              << nsvm::format_sig9(br.holdout_neutrality) << ", holds "
              << (br.holds_on_holdout ? "yes" : "no") << "\n";
    return 0;
  }

  nsvm::GapStudyConfig gc;
  gc.ns = a.ns;
  gc.etas = a.etas;
  gc.d = a.d;
  gc.seed = a.seed;
  gc.folds = static_cast<int>(a.folds);
  gc.repeats = static_cast<int>(a.repeats);
  gc.lambda_per_sample = a.lambda_per_sample;
  gc.solver = primal_config(a.solver);
  gc.with_bounds = true;
  gc.delta = a.delta;
  gc.bound_draws = a.draws;
  const nsvm::GapStudyResult res = nsvm::gap_study(gc);

  config["ns"] = a.ns;
  config["etas"] = a.etas;
  config["d"] = a.d;
  config["lambda_per_sample"] = a.lambda_per_sample;
  out_json["config"] = config;
  json rows = json::array();
  for (const auto& r : res.rows) {
    rows.push_back({{"n", r.n},
                    {"eta", r.eta},
                    {"mean_risk_gap", r.mean_risk_gap},
                    {"mean_neutrality_gap", r.mean_neutrality_gap},
                    {"mean_abs_risk_gap", r.mean_abs_risk_gap},
                    {"mean_abs_neutrality_gap", r.mean_abs_neutrality_gap},
                    {"std_risk_gap", r.std_risk_gap},
                    {"std_neutrality_gap", r.std_neutrality_gap},
                    {"mean_bound", r.mean_bound},
                    {"bound_hold_rate", r.bound_hold_rate}});
  }
  out_json["rows"] = rows;
  json slopes = json::array();
  for (const auto& s : res.slopes)
    slopes.push_back({{"eta", s.eta},
                      {"risk_slope", s.risk_slope},
                      {"neutrality_slope", s.neutrality_slope}});
  out_json["slopes"] = slopes;
  nsvm::write_json(a.out, out_json);
  for (const auto& s : res.slopes)
    std::cout << "eta " << nsvm::format_sig9(s.eta) << ": risk slope "
              << nsvm::format_sig9(s.risk_slope) << ", neutrality slope "
              << nsvm::format_sig9(s.neutrality_slope) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neutralized svm: train/evaluate hinge classifiers with a neutrality penalty"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cg = app.add_subcommand("gen-synth", "generate a synthetic dataset");
  cg->add_option("--n", gen.n, "sample count")->required()->check(CLI::PositiveNumber);
  cg->add_option("--d", gen.d, "dimension")->check(CLI::PositiveNumber);
  cg->add_option("--seed", gen.seed, "rng seed");
  cg->add_option("--noise-scale", gen.noise_scale, "label flip sharpness");
  cg->add_option("--out", gen.out, "output CSV path")->required();

  TrainArgs train;
  auto* ct = app.add_subcommand("train", "fit a model");
  ct->add_option("--data", train.data, "training CSV")->required();
  ct->add_option("--schema", train.schema, "ingestion schema JSON");
  ct->add_option("--out", train.out, "model JSON path")->required();
  ct->add_option("--report", train.report, "report JSON path (default <out>.report.json)");
  ct->add_option("--seed", train.seed, "rng seed (recorded)");
  add_solver_flags(ct, train.solver, true);

  PredictArgs pred;
  auto* cp = app.add_subcommand("predict", "score a dataset with a saved model");
  cp->add_option("--model", pred.model, "model JSON")->required();
  cp->add_option("--data", pred.data, "input CSV")->required();
  cp->add_option("--schema", pred.schema, "ingestion schema JSON");
  cp->add_option("--out", pred.out, "scores CSV path")->required();

  SweepArgs sweep;
  auto* cs = app.add_subcommand("sweep", "trade-off sweep over the eta grid");
  cs->add_option("--data", sweep.data, "dataset CSV")->required();
  cs->add_option("--schema", sweep.schema, "ingestion schema JSON");
  cs->add_option("--out", sweep.out, "sweep CSV path")->required();
  cs->add_option("--json", sweep.json_out, "also write rows+cells JSON");
  cs->add_option("--svg", sweep.svg_out, "also write scatter SVG");
  cs->add_flag("--pareto", sweep.pareto, "drop dominated rows from the CSV/JSON");
  cs->add_option("--etas", sweep.etas, "eta grid")->delimiter(',');
  cs->add_option("--folds", sweep.folds, "cross-validation folds");
  cs->add_option("--repeats", sweep.repeats, "fold reshuffles");
  cs->add_option("--seed", sweep.seed, "rng seed");
  add_solver_flags(cs, sweep.solver, false);

  BoundArgs bound;
  auto* cb = app.add_subcommand("bound-check", "deviation-bound certification");
  cb->add_option("--data", bound.data, "dataset CSV (omit for the synthetic n-sweep)");
  cb->add_option("--schema", bound.schema, "ingestion schema JSON");
  cb->add_option("--out", bound.out, "report JSON path")->required();
  cb->add_option("--ns", bound.ns, "synthetic sample counts")->delimiter(',');
  cb->add_option("--etas", bound.etas, "eta grid for the n-sweep")->delimiter(',');
  cb->add_option("--d", bound.d, "synthetic dimension");
  cb->add_option("--lambda-per-sample", bound.lambda_per_sample,
                 "lambda = this * train size in the n-sweep");
  cb->add_option("--delta", bound.delta, "bound confidence level");
  cb->add_option("--draws", bound.draws, "Monte-Carlo sign draws");
  cb->add_option("--folds", bound.folds, "cross-validation folds");
  cb->add_option("--repeats", bound.repeats, "fold reshuffles");
  cb->add_option("--seed", bound.seed, "rng seed");
  add_solver_flags(cb, bound.solver, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cg->parsed()) return cmd_gen_synth(gen);
    if (ct->parsed()) return cmd_train(train);
    if (cp->parsed()) return cmd_predict(pred);
    if (cs->parsed()) return cmd_sweep(sweep);
    if (cb->parsed()) return cmd_bound_check(bound);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
