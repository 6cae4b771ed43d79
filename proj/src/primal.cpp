#include "nsvm/primal.hpp"

#include <cmath>

#include "nsvm/loss.hpp"
#include "nsvm/ops.hpp"

namespace nsvm {

namespace {

void validate(const SubgradConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("SubgradConfig: max_iters must be >= 1");
  if (!(cfg.tol >= 0.0)) throw std::invalid_argument("SubgradConfig: tol must be >= 0");
  if (cfg.step_constant < 0.0 || !std::isfinite(cfg.step_constant))
    throw std::invalid_argument("SubgradConfig: step_constant must be nonnegative");
  if (!(cfg.tie_alpha >= 0.0 && cfg.tie_alpha <= 1.0))
    throw std::invalid_argument("SubgradConfig: tie_alpha must be in [0,1]");
  if (cfg.trace_stride < 1) throw std::invalid_argument("SubgradConfig: trace_stride must be >= 1");
}

// d/ds coefficient of hinge(t*s): -t below the knee, 0 above, -alpha*t at it
inline double hinge_slope_coef(double t, double s, double alpha) {
  const double m = t * s;
  if (m < 1.0) return -t;
  if (m > 1.0) return 0.0;
  return -alpha * t;
}

double step_size(const SubgradConfig& cfg, double lambda, std::size_t t) {
  const double c = cfg.step_constant > 0.0 ? cfg.step_constant : 1.0 / lambda;
  switch (cfg.step_rule) {
    case StepRule::constant: return c;
    case StepRule::inv_sqrt: return c / std::sqrt(static_cast<double>(t));
    case StepRule::inv_lambda_t: return 1.0 / (lambda * static_cast<double>(t));
  }
  throw std::invalid_argument("SubgradConfig: unknown step rule");
}

}  // namespace

Subgrad subgradient(const LinearModel& model, const Dataset& data, const Hyperparams& hp,
                    double tie_alpha) {
  check_dims(model, data);
  validate(hp);
  if (!(tie_alpha >= 0.0 && tie_alpha <= 1.0))
    throw std::invalid_argument("subgradient: tie_alpha must be in [0,1]");

  std::vector<double> scores(data.n);
  ops::decision_values(data, model.w, model.b, scores);

  // Everything except the ridge term is a sum of hinge-of-margin pieces, so
  // the subgradient is sum_i coef_i * (x_i, 1) + lambda * (w, 0).
  const auto sums = ops::margin_sums(data, scores);
  std::vector<double> coef(data.n, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(data.n);
#pragma omp parallel for schedule(static) if (n > 8192)
  for (std::int64_t i = 0; i < n; ++i) {
    double ci = hinge_slope_coef(data.ys[i], scores[i], tie_alpha);
    if (sums.c_plus > sums.c_minus) {
      ci += hp.eta * hinge_slope_coef(data.vs[i], scores[i], tie_alpha);
    } else if (sums.c_minus > sums.c_plus) {
      ci += hp.eta * hinge_slope_coef(-data.vs[i], scores[i], tie_alpha);
    } else {
      // max of two equal branches: any convex combination of the two sides
      ci += hp.eta * (tie_alpha * hinge_slope_coef(data.vs[i], scores[i], tie_alpha) +
                      (1.0 - tie_alpha) * hinge_slope_coef(-data.vs[i], scores[i], tie_alpha));
    }
    coef[i] = ci;
  }

  Subgrad g;
  g.gw = ops::weighted_input_sum(data, coef);
  for (std::size_t j = 0; j < data.d; ++j) g.gw[j] += hp.lambda * model.w[j];
  g.gb = ops::sum(coef);
  return g;
}

std::pair<LinearModel, SolveReport> solve_primal(const Dataset& data, const Hyperparams& hp,
                                                 const SubgradConfig& cfg) {
  validate(hp);
  validate(cfg);
  if (data.n == 0 || data.d == 0) throw std::invalid_argument("solve_primal: empty dataset");

  LinearModel model(data.d);
  LinearModel best_model = model;

  SolveReport report;
  report.trace_stride = cfg.trace_stride;

  std::vector<double> scores(data.n);
  auto objective = [&](const LinearModel& m) {
    ops::decision_values(data, m.w, m.b, scores);
    return nerm_objective(data, scores, ops::dot(m.w, m.w), hp);
  };

  double best = objective(model);
  report.objective_trace.push_back(best);
  std::size_t since_improve = 0;
  report.termination = Termination::max_iters;

  std::size_t t = 0;
  while (t < cfg.max_iters) {
    ++t;
    const Subgrad g = subgradient(model, data, hp, cfg.tie_alpha);
    const double step = step_size(cfg, hp.lambda, t);
    for (std::size_t j = 0; j < data.d; ++j) model.w[j] -= step * g.gw[j];
    model.b -= step * g.gb;

    const double obj = objective(model);
    if (t % cfg.trace_stride == 0 || t == cfg.max_iters)
      report.objective_trace.push_back(obj);

    if (obj < best - cfg.tol) {
      since_improve = 0;
    } else {
      ++since_improve;
    }
    if (obj < best) {
      best = obj;
      best_model = model;
    }
    if (cfg.patience > 0 && since_improve >= cfg.patience) {
      report.termination = Termination::tol_reached;
      break;
    }
  }

  report.iterations = t;
  report.best_objective = best;
  // keep best == min(trace) even when the stride skipped the best iterate
  double traced_min = report.objective_trace.front();
  for (double v : report.objective_trace) traced_min = traced_min < v ? traced_min : v;
  if (best < traced_min) report.objective_trace.push_back(best);
  return {std::move(best_model), std::move(report)};
}

}  // namespace nsvm
