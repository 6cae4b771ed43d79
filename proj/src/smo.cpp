#include "nsvm/smo.hpp"

#include <algorithm>
#include <cmath>

#include "nsvm/loss.hpp"
#include "nsvm/ops.hpp"

namespace nsvm {

namespace {
constexpr double kFlatCurvature = 1e-12;
}

DualState::DualState(const Dataset& data, const KernelSpec& kernel, const Hyperparams& hp_in,
                     std::size_t cache_bytes)
    : n(data.n), hp(hp_in), q(data, kernel, cache_bytes) {
  validate(hp);
  if (n == 0) throw std::invalid_argument("DualState: empty dataset");
  nu_plus = 0.5 * hp.eta;
  nu_minus = hp.eta - nu_plus;
  gamma.assign(3 * n, 0.0);
  grad.assign(3 * n, -hp.lambda);  // Q*0 - lambda*1
}

void DualState::reset_split(double s) {
  if (s < 0.0 || s > hp.eta) throw std::invalid_argument("reset_split: split outside [0, eta]");
  nu_plus = s;
  nu_minus = hp.eta - s;
  std::fill(gamma.begin(), gamma.end(), 0.0);
  std::fill(grad.begin(), grad.end(), -hp.lambda);
}

DualState init_state(const Dataset& data, const KernelSpec& kernel, const Hyperparams& hp,
                     std::size_t cache_bytes) {
  return DualState(data, kernel, hp, cache_bytes);
}

double dual_objective(const DualState& state) {
  // f = (1/2) gamma'(grad + lambda*1) - lambda*sum(gamma)
  //   = (1/2)(gamma'grad - lambda*sum(gamma))
  double g_dot = 0.0, g_sum = 0.0;
  for (std::size_t I = 0; I < state.gamma.size(); ++I) {
    g_dot += state.gamma[I] * state.grad[I];
    g_sum += state.gamma[I];
  }
  return 0.5 * (g_dot - state.hp.lambda * g_sum);
}

KktValues kkt_values(const DualState& state) {
  KktValues out;
  for (std::size_t I = 0; I < state.gamma.size(); ++I) {
    const double s = state.kkt_value(I);
    if (state.in_up(I)) {
      out.has_up = true;
      if (s > out.m) out.m = s;
    }
    if (state.in_low(I)) {
      out.has_low = true;
      if (s < out.M) out.M = s;
    }
  }
  return out;
}

WorkingSet select_working_set(DualState& state, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("select_working_set: eps must be positive");
  const std::size_t size = state.gamma.size();

  WorkingSet ws;
  std::size_t best_i = size;
  double m = -std::numeric_limits<double>::infinity();
  double M = std::numeric_limits<double>::infinity();
  for (std::size_t I = 0; I < size; ++I) {
    const double s = state.kkt_value(I);
    if (state.in_up(I) && s > m) {
      m = s;
      best_i = I;
    }
    if (state.in_low(I) && s < M) M = s;
  }
  ws.m = m;
  ws.M = M;
  if (best_i == size || !std::isfinite(M) || m - M <= eps) return ws;  // converged

  // second-order scan: maximize B^2/A over I_low entries strictly below m
  const std::span<const double> krow_i = state.q.kernel_row(best_i % state.n);
  const double diag_i = state.q.diag(best_i);
  std::size_t best_j = size;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t L = 0; L < size; ++L) {
    if (L == best_i || !state.in_low(L)) continue;
    const double sL = state.kkt_value(L);
    if (!(sL < m)) continue;
    const double kil = krow_i[L % state.n];
    double a = diag_i + state.q.diag(L) - 2.0 * kil;  // tau*Q_il == K_il for t in {-1,+1}
    if (a < kFlatCurvature) a = kFlatCurvature;
    const double b = m - sL;  // |B_ij| = |grad difference| regardless of signs
    const double score = (b * b) / a;
    if (score > best_score) {
      best_score = score;
      best_j = L;
    }
  }
  if (best_j == size) return ws;  // nothing eligible: treat as converged

  ws.converged = false;
  ws.i = best_i;
  ws.j = best_j;
  return ws;
}

namespace {

// rank-2 gradient refresh: samples s1 and s2 changed their collapsed
// coefficients a_s = y_s*alpha_s + v_s*(beta+_s - beta-_s) by c1 and c2
void apply_grad_update(DualState& state, double c1, std::span<const double> row1, double c2,
                       std::span<const double> row2) {
  const std::size_t n = state.n;
  double* grad = state.grad.data();
  const double* ys = state.t().data();      // block 0: y
  const double* vs = state.t().data() + n;  // block 1: v
  const double* k1 = row1.data();
  const double* k2 = row2.data();
  const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (nn > 8192)
  for (std::int64_t s = 0; s < nn; ++s) {
    const double base = c1 * k1[s] + c2 * k2[s];
    grad[s] += ys[s] * base;
    grad[nn + s] += vs[s] * base;
    grad[2 * nn + s] -= vs[s] * base;
  }
}

}  // namespace

bool update_pair(DualState& state, std::size_t i, std::size_t j) {
  const std::size_t n = state.n;
  const std::size_t size = state.gamma.size();
  if (i >= size || j >= size || i == j)
    throw std::invalid_argument("update_pair: invalid index pair");

  const auto& t = state.t();
  const double ti = t[i], tj = t[j];
  const double tau = ti * tj;
  const double xi = state.gamma[i], xj = state.gamma[j];

  // rows are keyed by sample; fetch both up front (cache holds >= 2 rows)
  const std::span<const double> krow_i = state.q.kernel_row(i % n);
  const std::span<const double> krow_j = state.q.kernel_row(j % n);

  // feasible interval for gamma_i: its own box intersected with gamma_j's box
  // mapped through gamma_j' = gamma_j - tau*(gamma_i' - gamma_i)
  double lo = 0.0, hi = state.box_top(i);
  const double top_j = state.box_top(j);
  if (tau > 0.0) {
    lo = std::max(lo, xi + xj - top_j);
    hi = std::min(hi, xi + xj);
  } else {
    lo = std::max(lo, xi - xj);
    hi = std::min(hi, xi - xj + top_j);
  }
  if (!(hi - lo > 0.0)) return false;  // zero-width slice

  double a = state.q.diag(i) + state.q.diag(j) - 2.0 * krow_i[j % n];
  if (a < kFlatCurvature) a = kFlatCurvature;  // flat slice: step runs to an edge
  const double b = -state.grad[i] + tau * state.grad[j];

  const double ni = std::clamp(xi + b / a, lo, hi);
  const double di = ni - xi;
  if (di == 0.0) return false;
  double nj = xj - tau * di;
  // shave off rounding dust so box membership tests stay exact
  if (nj < 0.0) nj = 0.0;
  if (nj > top_j) nj = top_j;

  state.gamma[i] = ni;
  state.gamma[j] = nj;
  apply_grad_update(state, ti * di, krow_i, tj * (nj - xj), krow_j);
  return true;
}

double recover_bias(const DualState& state) {
  const KktValues kv = kkt_values(state);
  double p = 0.0;
  if (kv.has_up && kv.has_low) {
    p = 0.5 * (kv.m + kv.M);
  } else if (kv.has_up) {
    p = kv.m;
  } else if (kv.has_low) {
    p = kv.M;
  }
  // at free coordinates -t_I grad_I = lambda * bias
  return p / state.hp.lambda;
}

double predict(const KernelModel& model, std::span<const double> x) {
  if (x.size() != model.d) throw std::invalid_argument("predict: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < model.support_count(); ++i)
    acc += model.coefficients[i] * kernel_eval(model.kernel, model.input(i), x);
  return acc / model.lambda + model.bias;
}

std::vector<double> predict(const KernelModel& model, const Dataset& data) {
  if (data.d != model.d) throw std::invalid_argument("predict: dimension mismatch");
  std::vector<double> out(data.n);
  const std::int64_t n = static_cast<std::int64_t>(data.n);
#pragma omp parallel for schedule(static) if (n * static_cast<std::int64_t>(model.support_count()) > 2048)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = predict(model, data.input(static_cast<std::size_t>(i)));
  return out;
}

LinearModel explicit_weights(const KernelModel& model) {
  if (model.kernel.kind != KernelKind::linear)
    throw std::invalid_argument("explicit_weights: model kernel is not linear");
  LinearModel lin(model.d);
  for (std::size_t i = 0; i < model.support_count(); ++i) {
    const auto xi = model.input(i);
    const double c = model.coefficients[i] / model.lambda;
    for (std::size_t jj = 0; jj < model.d; ++jj) lin.w[jj] += c * xi[jj];
  }
  lin.b = model.bias;
  return lin;
}

namespace {

struct SplitRun {
  bool converged = false;
  bool stalled = false;
};

// pair-update loop at the current split, from the current gamma
SplitRun run_split(DualState& state, const SmoConfig& cfg, std::size_t& used,
                   std::vector<double>& trace) {
  SplitRun r;
  while (used < cfg.max_iters) {
    const WorkingSet ws = select_working_set(state, cfg.eps);
    if (ws.converged) {
      r.converged = true;
      return r;
    }
    const bool progressed = update_pair(state, ws.i, ws.j);
    ++used;
    if (used % cfg.trace_stride == 0) trace.push_back(dual_objective(state));
    if (!progressed) {
      r.stalled = true;
      return r;
    }
  }
  return r;  // budget exhausted
}

}  // namespace

std::pair<KernelModel, SolveReport> solve_smo(const Dataset& data, const KernelSpec& kernel,
                                              const Hyperparams& hp, const SmoConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("SmoConfig: eps must be positive");
  if (cfg.max_iters < 1) throw std::invalid_argument("SmoConfig: max_iters must be >= 1");
  if (cfg.trace_stride < 1) throw std::invalid_argument("SmoConfig: trace_stride must be >= 1");

  DualState state(data, kernel, hp, cfg.cache_bytes);
  SolveReport report;
  report.trace_stride = cfg.trace_stride;
  report.objective_trace.push_back(dual_objective(state));
  report.termination = Termination::tol_reached;

  // f at the optimum of the fixed-split box QP is convex in the split s, so
  // golden-section search over [0, eta] finds the cap pair nu+ = s,
  // nu- = eta - s that realizes the full dual optimum
  std::size_t used = 0;
  bool out_of_budget = false, stalled = false;
  double best_f = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  std::vector<double> best_gamma, best_grad;

  auto evaluate = [&](double s) {
    if (out_of_budget || stalled) return;
    state.reset_split(s);
    const SplitRun r = run_split(state, cfg, used, report.objective_trace);
    stalled = stalled || r.stalled;
    out_of_budget = out_of_budget || (!r.converged && !r.stalled);
    const double f = dual_objective(state);
    if (f < best_f) {
      best_f = f;
      best_s = s;
      best_gamma = state.gamma;
      best_grad = state.grad;
    }
  };

  if (hp.eta <= 0.0) {
    evaluate(0.0);
  } else {
    constexpr double kInvPhi = 0.6180339887498949;
    evaluate(0.0);
    evaluate(hp.eta);
    double lo = 0.0, hi = hp.eta;
    double c = hi - (hi - lo) * kInvPhi;
    double d = lo + (hi - lo) * kInvPhi;
    evaluate(c);
    double fc = dual_objective(state);
    evaluate(d);
    double fd = dual_objective(state);
    while (hi - lo > 1e-12 * hp.eta && !out_of_budget && !stalled) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - (hi - lo) * kInvPhi;
        evaluate(c);
        fc = dual_objective(state);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + (hi - lo) * kInvPhi;
        evaluate(d);
        fd = dual_objective(state);
      }
    }
  }

  if (stalled) {
    report.termination = Termination::stalled;
  } else if (out_of_budget) {
    report.termination = Termination::max_iters;
  }
  report.iterations = used;

  // park the state at the best split found for model assembly
  if (!best_gamma.empty()) {
    state.nu_plus = best_s;
    state.nu_minus = hp.eta - best_s;
    state.gamma = std::move(best_gamma);
    state.grad = std::move(best_grad);
  }

  const double f_final = dual_objective(state);
  if (report.objective_trace.back() != f_final) report.objective_trace.push_back(f_final);
  report.best_objective = report.objective_trace.front();
  for (double v : report.objective_trace)
    if (v < report.best_objective) report.best_objective = v;

  // model assembly: a_i collapses the three blocks through their signs
  KernelModel model;
  model.d = data.d;
  model.kernel = kernel;
  model.lambda = hp.lambda;
  model.bias = recover_bias(state);
  const auto& t = state.t();
  const std::size_t n = data.n;
  for (std::size_t s = 0; s < n; ++s) {
    const double a = t[s] * state.gamma[s] + t[n + s] * state.gamma[n + s] +
                     t[2 * n + s] * state.gamma[2 * n + s];
    if (a != 0.0) {
      model.coefficients.push_back(a);
      const auto x = data.input(s);
      model.support_xs.insert(model.support_xs.end(), x.begin(), x.end());
    }
  }

  DualDiagnostics diag;
  diag.dual_objective = -f_final / hp.lambda;
  const KktValues kv = kkt_values(state);
  diag.kkt_gap = (kv.has_up && kv.has_low) ? kv.m - kv.M
                                           : -std::numeric_limits<double>::infinity();
  // primal value of the recovered model, all from cached quantities:
  // scores_i = (1/lambda)(K a)_i + bias with (K a)_i = t_i (grad_i + lambda),
  // ||w||^2 = gamma'Q gamma / lambda^2
  {
    std::vector<double> scores(n);
    for (std::size_t s = 0; s < n; ++s)
      scores[s] = t[s] * (state.grad[s] + hp.lambda) / hp.lambda + model.bias;
    double quad = 0.0;
    for (std::size_t I = 0; I < 3 * n; ++I)
      quad += state.gamma[I] * (state.grad[I] + hp.lambda);
    diag.primal_objective =
        nerm_objective(data, scores, quad / (hp.lambda * hp.lambda), hp);
    diag.duality_gap = diag.primal_objective - diag.dual_objective;
  }
  report.dual = diag;
  return {std::move(model), std::move(report)};
}

}  // namespace nsvm
