#include "nsvm/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nsvm {

namespace {

// JSON cannot carry inf/nan literals; encode as strings, decode on read
nlohmann::json enc(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

nlohmann::json to_json(const KernelSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind == KernelKind::rbf) j["gamma"] = spec.gamma;
  if (spec.kind == KernelKind::polynomial) {
    j["degree"] = spec.degree;
    j["coef0"] = spec.coef0;
  }
  return j;
}

KernelSpec kernel_spec_from_json(const nlohmann::json& j) {
  KernelSpec spec;
  spec.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
  if (spec.kind == KernelKind::rbf) spec.gamma = j.at("gamma").get<double>();
  if (spec.kind == KernelKind::polynomial) {
    spec.degree = j.at("degree").get<int>();
    spec.coef0 = j.value("coef0", 0.0);
  }
  validate(spec);
  return spec;
}

nlohmann::json to_json(const SolveReport& report) {
  nlohmann::json j;
  j["best_objective"] = report.best_objective;
  j["iterations"] = report.iterations;
  j["termination"] = to_string(report.termination);
  j["trace_stride"] = report.trace_stride;
  j["objective_trace"] = report.objective_trace;
  if (report.dual) {
    j["dual"] = {{"dual_objective", report.dual->dual_objective},
                 {"primal_objective", report.dual->primal_objective},
                 {"duality_gap", report.dual->duality_gap},
                 {"kkt_gap", enc(report.dual->kkt_gap)}};
  }
  return j;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["empirical_neutrality"] = report.empirical_neutrality;
  j["rademacher_term"] = report.rademacher_term;
  j["confidence_term"] = report.confidence_term;
  j["total_bound"] = report.total_bound;
  j["delta"] = report.delta;
  j["c_cap"] = report.c_cap;
  j["radius"] = report.radius;
  j["holdout_neutrality"] = report.holdout_neutrality;
  j["holds_on_holdout"] = report.holds_on_holdout;
  return j;
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& r : result.rows) {
    rows.push_back({{"eta", r.eta},
                    {"lambda", r.lambda},
                    {"mean_auc", enc(r.mean_auc)},
                    {"std_auc", enc(r.std_auc)},
                    {"mean_neutrality", enc(r.mean_neutrality)},
                    {"std_neutrality", enc(r.std_neutrality)},
                    {"mean_risk_gap", enc(r.mean_risk_gap)},
                    {"mean_neutrality_gap", enc(r.mean_neutrality_gap)}});
  }
  nlohmann::json cells = nlohmann::json::array();
  for (const SweepCell& c : result.cells) {
    cells.push_back({{"eta_index", c.eta_index},
                     {"eta", c.eta},
                     {"repeat", c.repeat},
                     {"fold", c.fold},
                     {"ok", c.ok},
                     {"error", c.error},
                     {"converged", c.converged},
                     {"auc", enc(c.auc)},
                     {"test_neutrality", c.test_neutrality},
                     {"train_neutrality", c.train_neutrality},
                     {"corollary_limit", enc(c.corollary_limit)},
                     {"corollary_ok", c.corollary_ok},
                     {"risk_gap", c.risk_gap},
                     {"neutrality_gap", c.neutrality_gap}});
  }
  return nlohmann::json{{"rows", rows}, {"cells", cells}};
}

nlohmann::json model_to_json(const LinearModel& model, const Hyperparams& hp) {
  nlohmann::json j;
  j["format"] = "nsvm-model";
  j["type"] = "linear";
  j["d"] = model.dim();
  j["w"] = model.w;
  j["b"] = model.b;
  j["lambda"] = hp.lambda;
  j["eta"] = hp.eta;
  return j;
}

nlohmann::json model_to_json(const KernelModel& model, const Hyperparams& hp) {
  nlohmann::json j;
  j["format"] = "nsvm-model";
  j["type"] = "kernel";
  j["d"] = model.d;
  j["kernel"] = to_json(model.kernel);
  j["bias"] = model.bias;
  j["lambda"] = model.lambda;
  j["eta"] = hp.eta;
  j["coefficients"] = model.coefficients;
  nlohmann::json support = nlohmann::json::array();
  for (std::size_t i = 0; i < model.support_count(); ++i) {
    const auto x = model.input(i);
    support.push_back(std::vector<double>(x.begin(), x.end()));
  }
  j["support"] = support;
  return j;
}

double LoadedModel::decision(std::span<const double> x) const {
  if (linear) return linear->decision(x);
  return predict(*kernel, x);
}

std::size_t LoadedModel::dim() const { return linear ? linear->dim() : kernel->d; }

LoadedModel model_from_json(const nlohmann::json& j, const std::string& context) {
  LoadedModel out;
  out.meta = j;
  try {
    if (j.value("format", "") != "nsvm-model")
      throw std::runtime_error("not a model file (missing format tag)");
    const std::string type = j.at("type").get<std::string>();
    out.hp.lambda = j.at("lambda").get<double>();
    out.hp.eta = j.at("eta").get<double>();
    if (type == "linear") {
      LinearModel m;
      m.w = j.at("w").get<std::vector<double>>();
      m.b = j.at("b").get<double>();
      if (m.w.size() != j.at("d").get<std::size_t>())
        throw std::runtime_error("weight vector length disagrees with d");
      out.linear = std::move(m);
    } else if (type == "kernel") {
      KernelModel m;
      m.d = j.at("d").get<std::size_t>();
      m.kernel = kernel_spec_from_json(j.at("kernel"));
      m.bias = j.at("bias").get<double>();
      m.lambda = j.at("lambda").get<double>();
      m.coefficients = j.at("coefficients").get<std::vector<double>>();
      for (const auto& row : j.at("support")) {
        const auto x = row.get<std::vector<double>>();
        if (x.size() != m.d) throw std::runtime_error("support vector length disagrees with d");
        m.support_xs.insert(m.support_xs.end(), x.begin(), x.end());
      }
      if (m.coefficients.size() * m.d != m.support_xs.size())
        throw std::runtime_error("coefficient count disagrees with support vectors");
      out.kernel = std::move(m);
    } else {
      throw std::runtime_error("unknown model type '" + type + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(context + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(context + ": " + e.what());
  }
  validate(out.hp);
  return out;
}

LoadedModel load_model(const std::string& path) {
  return model_from_json(read_json(path), path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace nsvm
