#include "nsvm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nsvm/data.hpp"
#include "nsvm/loss.hpp"
#include "nsvm/ops.hpp"
#include "nsvm/rng.hpp"
#include "nsvm/text.hpp"
#include "nsvm/theory.hpp"

namespace nsvm {

namespace {

// average ranks (1-based) with tie groups sharing their mean rank
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double auc(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("auc: size mismatch");
  std::size_t pos = 0, neg = 0;
  for (double y : labels) {
    if (y == 1.0) ++pos;
    else if (y == -1.0) ++neg;
    else throw std::invalid_argument("auc: labels must be -1 or +1");
  }
  if (pos == 0 || neg == 0) throw std::invalid_argument("auc: needs both classes");
  const std::vector<double> ranks = average_ranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1.0) rank_sum_pos += ranks[i];
  const double np = static_cast<double>(pos), nn = static_cast<double>(neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: size mismatch");
  if (a.size() < 2) throw std::invalid_argument("spearman: needs at least two points");
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) throw std::invalid_argument("spearman: constant input");
  return cov / std::sqrt(va * vb);
}

const char* to_string(SolverKind kind) {
  return kind == SolverKind::primal ? "primal" : "dual";
}

SweepResult run_sweep(const Dataset& data, const SweepConfig& cfg) {
  if (cfg.eta_grid.empty()) throw std::invalid_argument("run_sweep: empty eta grid");
  if (cfg.repeats < 1) throw std::invalid_argument("run_sweep: repeats must be >= 1");
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("run_sweep: lambda must be positive");

  // fold splits are shared across the grid: one layout per repeat
  std::vector<std::vector<FoldSplit>> splits(cfg.repeats);
  for (std::size_t r = 0; r < cfg.repeats; ++r)
    splits[r] = kfold(data.n, cfg.folds, derive_seed(cfg.seed, r));

  const std::size_t cells_per_eta = cfg.repeats * cfg.folds;
  SweepResult result;
  result.cells.resize(cfg.eta_grid.size() * cells_per_eta);

  const std::int64_t total = static_cast<std::int64_t>(result.cells.size());
#pragma omp parallel for schedule(dynamic) if (total > 1)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t e = static_cast<std::size_t>(idx) / cells_per_eta;
    const std::size_t within = static_cast<std::size_t>(idx) % cells_per_eta;
    const std::size_t r = within / cfg.folds;
    const std::size_t f = within % cfg.folds;

    SweepCell& cell = result.cells[idx];
    cell.eta_index = e;
    cell.repeat = r;
    cell.fold = f;
    cell.eta = cfg.eta_grid[e];
    try {
      const Dataset train = subset(data, splits[r][f].train);
      const Dataset test = subset(data, splits[r][f].test);
      Hyperparams hp;
      hp.lambda = cfg.lambda;
      hp.eta = cell.eta;

      std::vector<double> train_scores, test_scores;
      Termination term;
      if (cfg.solver == SolverKind::primal) {
        auto [model, rep] = solve_primal(train, hp, cfg.primal);
        term = rep.termination;
        train_scores.resize(train.n);
        ops::decision_values(train, model.w, model.b, train_scores);
        test_scores.resize(test.n);
        ops::decision_values(test, model.w, model.b, test_scores);
      } else {
        auto [model, rep] = solve_smo(train, cfg.kernel, hp, cfg.smo);
        term = rep.termination;
        train_scores = predict(model, train);
        test_scores = predict(model, test);
      }
      cell.converged = term == Termination::tol_reached;

      std::size_t pos = 0;
      for (double y : test.ys)
        if (y == 1.0) ++pos;
      if (pos > 0 && pos < test.n) cell.auc = auc(test_scores, test.ys);

      cell.test_neutrality = sign_neutrality(test, test_scores).value;
      cell.train_neutrality = relaxed_neutrality(train, train_scores, Norm::mean).c_max;
      cell.corollary_limit = cell.eta > 0.0 ? 1.0 + 1.0 / cell.eta
                                            : std::numeric_limits<double>::infinity();
      cell.corollary_ok = cell.train_neutrality <= cell.corollary_limit + 1e-2;
      cell.risk_gap = empirical_risk(test, test_scores, Norm::mean) -
                      empirical_risk(train, train_scores, Norm::mean);
      cell.neutrality_gap = relaxed_neutrality(test, test_scores, Norm::mean).c_max -
                            cell.train_neutrality;
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  }

  for (std::size_t e = 0; e < cfg.eta_grid.size(); ++e) {
    SweepRow row;
    row.eta = cfg.eta_grid[e];
    row.lambda = cfg.lambda;

    double auc_sum = 0, auc_sq = 0;
    std::size_t auc_n = 0;
    double neut_sum = 0, neut_sq = 0;
    double rg_sum = 0, ng_sum = 0;
    std::size_t ok_n = 0;
    for (std::size_t c = 0; c < cells_per_eta; ++c) {
      const SweepCell& cell = result.cells[e * cells_per_eta + c];
      if (!cell.ok) continue;
      ++ok_n;
      if (!std::isnan(cell.auc)) {
        auc_sum += cell.auc;
        auc_sq += cell.auc * cell.auc;
        ++auc_n;
      }
      neut_sum += cell.test_neutrality;
      neut_sq += cell.test_neutrality * cell.test_neutrality;
      rg_sum += cell.risk_gap;
      ng_sum += cell.neutrality_gap;
    }
    const double nanv = std::numeric_limits<double>::quiet_NaN();
    auto mean_std = [](double sum, double sq, std::size_t count) {
      const double m = sum / static_cast<double>(count);
      double s = 0.0;
      if (count > 1) {
        const double var =
            (sq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1);
        s = var > 0.0 ? std::sqrt(var) : 0.0;
      }
      return std::pair<double, double>(m, s);
    };
    if (auc_n > 0) std::tie(row.mean_auc, row.std_auc) = mean_std(auc_sum, auc_sq, auc_n);
    else row.mean_auc = row.std_auc = nanv;
    if (ok_n > 0) {
      std::tie(row.mean_neutrality, row.std_neutrality) = mean_std(neut_sum, neut_sq, ok_n);
      row.mean_risk_gap = rg_sum / static_cast<double>(ok_n);
      row.mean_neutrality_gap = ng_sum / static_cast<double>(ok_n);
    } else {
      row.mean_neutrality = row.std_neutrality = nanv;
      row.mean_risk_gap = row.mean_neutrality_gap = nanv;
    }
    result.rows.push_back(row);
  }
  return result;
}

std::vector<std::size_t> pareto_keep(std::span<const SweepRow> rows) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!std::isnan(rows[i].mean_auc) && !std::isnan(rows[i].mean_neutrality)) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[a].mean_neutrality != rows[b].mean_neutrality)
      return rows[a].mean_neutrality < rows[b].mean_neutrality;
    return rows[a].mean_auc > rows[b].mean_auc;
  });

  std::vector<std::size_t> kept;
  double best_prev = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           rows[order[j + 1]].mean_neutrality == rows[order[i]].mean_neutrality)
      ++j;
    const double group_max = rows[order[i]].mean_auc;  // sorted descending within group
    if (group_max > best_prev)
      for (std::size_t k = i; k <= j; ++k)
        if (rows[order[k]].mean_auc == group_max) kept.push_back(order[k]);
    best_prev = std::max(best_prev, group_max);
    i = j + 1;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

SweepResult pareto_filter(const SweepResult& result) {
  const std::vector<std::size_t> kept = pareto_keep(result.rows);
  SweepResult out;
  for (std::size_t idx : kept) out.rows.push_back(result.rows[idx]);
  const std::size_t cells_per_eta =
      result.rows.empty() ? 0 : result.cells.size() / result.rows.size();
  for (std::size_t idx : kept)
    for (std::size_t c = 0; c < cells_per_eta; ++c)
      out.cells.push_back(result.cells[idx * cells_per_eta + c]);
  return out;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "eta,lambda,mean_auc,std_auc,mean_neutrality,std_neutrality,"
         "mean_risk_gap,mean_neutrality_gap\n";
  for (const SweepRow& r : result.rows) {
    out << format_sig9(r.eta) << "," << format_sig9(r.lambda) << "," << format_sig9(r.mean_auc)
        << "," << format_sig9(r.std_auc) << "," << format_sig9(r.mean_neutrality) << ","
        << format_sig9(r.std_neutrality) << "," << format_sig9(r.mean_risk_gap) << ","
        << format_sig9(r.mean_neutrality_gap) << "\n";
  }
  return out.str();
}

}  // namespace nsvm
