#include "nsvm/theory.hpp"

#include <cmath>

#include "nsvm/data.hpp"
#include "nsvm/loss.hpp"
#include "nsvm/ops.hpp"
#include "nsvm/rng.hpp"

namespace nsvm {

double rademacher_linear(const Dataset& data, double radius, std::size_t num_draws,
                         std::uint64_t seed) {
  if (data.n == 0) throw std::invalid_argument("rademacher_linear: empty dataset");
  if (!(radius >= 0.0)) throw std::invalid_argument("rademacher_linear: radius must be >= 0");
  if (num_draws < 1) throw std::invalid_argument("rademacher_linear: num_draws must be >= 1");

  const std::size_t n = data.n;
  const std::size_t d = data.d;
  std::vector<double> norms(num_draws);
  const std::int64_t draws = static_cast<std::int64_t>(num_draws);
#pragma omp parallel for schedule(static) if (draws * static_cast<std::int64_t>(n) > 2048)
  for (std::int64_t k = 0; k < draws; ++k) {
    SplitMix64 g(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::vector<double> acc(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = g.sign() * data.vs[i];
      const double* x = data.xs.data() + i * d;
      for (std::size_t j = 0; j < d; ++j) acc[j] += c * x[j];
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) sq += acc[j] * acc[j];
    norms[k] = std::sqrt(sq);
  }
  double mean = 0.0;
  for (double v : norms) mean += v;
  mean /= static_cast<double>(num_draws);
  // radius multiplies last so the estimate is exactly linear in it
  return radius * (mean / static_cast<double>(n));
}

double corollary_bound(const Hyperparams& hp) {
  validate(hp);
  if (!(hp.eta > 0.0))
    throw std::invalid_argument("corollary_bound: eta must be positive (bound is vacuous at 0)");
  return 1.0 + 1.0 / hp.eta;
}

namespace {

double max_hinge_over(const Dataset& data, std::span<const double> scores) {
  double cap = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double hp = hinge(data.vs[i] * scores[i]);
    const double hm = hinge(-data.vs[i] * scores[i]);
    if (hp > cap) cap = hp;
    if (hm > cap) cap = hm;
  }
  return cap;
}

}  // namespace

BoundReport neutrality_bound(const LinearModel& model, const Dataset& train,
                             const Dataset& holdout, const BoundConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw std::invalid_argument("neutrality_bound: delta must be in (0,1)");
  check_dims(model, train);
  check_dims(model, holdout);

  std::vector<double> train_scores(train.n);
  ops::decision_values(train, model.w, model.b, train_scores);
  std::vector<double> holdout_scores(holdout.n);
  ops::decision_values(holdout, model.w, model.b, holdout_scores);

  BoundReport rep;
  rep.delta = cfg.delta;
  rep.radius = cfg.radius > 0.0 ? cfg.radius : std::sqrt(ops::dot(model.w, model.w));
  // the hinge is unbounded above; the bound's range hypothesis is honored by
  // clipping at the largest value the evaluation actually sees
  double cap = cfg.c_cap;
  if (!(cap > 0.0)) {
    cap = std::max(max_hinge_over(train, train_scores), max_hinge_over(holdout, holdout_scores));
    if (cap < 1.0) cap = 1.0;  // hinge at the origin
  }
  rep.c_cap = cap;

  rep.empirical_neutrality =
      relaxed_neutrality_clipped(train, train_scores, cap, Norm::mean).c_max;
  rep.rademacher_term = rademacher_linear(train, rep.radius, cfg.num_draws, cfg.seed);
  rep.confidence_term =
      cap * std::sqrt(std::log(2.0 / cfg.delta) / (2.0 * static_cast<double>(train.n)));
  rep.total_bound = rep.empirical_neutrality + 2.0 * rep.rademacher_term + rep.confidence_term;

  rep.holdout_neutrality =
      relaxed_neutrality_clipped(holdout, holdout_scores, cap, Norm::mean).c_max;
  rep.holds_on_holdout = rep.holdout_neutrality <= rep.total_bound;
  return rep;
}

GapPair generalization_gap(const LinearModel& model, const Dataset& train, const Dataset& test) {
  if (test.n == 0) throw std::invalid_argument("generalization_gap: empty test set");
  if (train.n == 0) throw std::invalid_argument("generalization_gap: empty train set");
  check_dims(model, train);
  check_dims(model, test);
  GapPair gap;
  gap.risk_gap = empirical_risk(model, test, Norm::mean) - empirical_risk(model, train, Norm::mean);
  gap.neutrality_gap = relaxed_neutrality(model, test, Norm::mean).c_max -
                       relaxed_neutrality(model, train, Norm::mean).c_max;
  return gap;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::fabs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("loglog_slope: fewer than two usable points");
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissae");
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

GapStudyResult gap_study(const GapStudyConfig& cfg) {
  if (cfg.ns.empty()) throw std::invalid_argument("gap_study: need at least one n");
  if (cfg.etas.empty()) throw std::invalid_argument("gap_study: need at least one eta");
  if (cfg.folds < 2) throw std::invalid_argument("gap_study: folds must be >= 2");
  if (cfg.repeats < 1) throw std::invalid_argument("gap_study: repeats must be >= 1");

  GapStudyResult result;
  for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni) {
    const std::size_t n = cfg.ns[ni];
    SynthConfig sc;
    sc.n = n;
    sc.d = cfg.d;
    sc.noise_scale = cfg.noise_scale;
    sc.seed = derive_seed(cfg.seed, 1000 + ni);
    const Dataset data = gen_synthetic(sc);

    for (double eta : cfg.etas) {
      std::vector<GapCell> cells;
      for (int r = 0; r < cfg.repeats; ++r) {
        const auto splits = kfold(data.n, static_cast<std::size_t>(cfg.folds),
                                  derive_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(r)));
        for (int f = 0; f < cfg.folds; ++f) {
          const Dataset train = subset(data, splits[f].train);
          const Dataset test = subset(data, splits[f].test);
          Hyperparams hp;
          hp.lambda = cfg.lambda_per_sample * static_cast<double>(train.n);
          hp.eta = eta;
          auto [model, rep] = solve_primal(train, hp, cfg.solver);

          GapCell cell;
          cell.n = n;
          cell.eta = eta;
          cell.repeat = r;
          cell.fold = f;
          cell.gap = generalization_gap(model, train, test);
          if (cfg.with_bounds) {
            BoundConfig bc;
            bc.delta = cfg.delta;
            bc.num_draws = cfg.bound_draws;
            bc.seed = derive_seed(cfg.seed, 3000 + static_cast<std::uint64_t>(r) * 100 +
                                                static_cast<std::uint64_t>(f));
            const BoundReport br = neutrality_bound(model, train, test, bc);
            cell.bound_total = br.total_bound;
            cell.bound_holds = br.holds_on_holdout;
          }
          cells.push_back(cell);
        }
      }

      GapRow row;
      row.n = n;
      row.eta = eta;
      const double count = static_cast<double>(cells.size());
      for (const GapCell& c : cells) {
        row.mean_risk_gap += c.gap.risk_gap;
        row.mean_neutrality_gap += c.gap.neutrality_gap;
        row.mean_abs_risk_gap += std::fabs(c.gap.risk_gap);
        row.mean_abs_neutrality_gap += std::fabs(c.gap.neutrality_gap);
        row.mean_bound += c.bound_total;
        row.bound_hold_rate += c.bound_holds ? 1.0 : 0.0;
      }
      row.mean_risk_gap /= count;
      row.mean_neutrality_gap /= count;
      row.mean_abs_risk_gap /= count;
      row.mean_abs_neutrality_gap /= count;
      row.mean_bound /= count;
      row.bound_hold_rate /= count;
      if (cells.size() > 1) {
        double vr = 0.0, vn = 0.0;
        for (const GapCell& c : cells) {
          vr += (c.gap.risk_gap - row.mean_risk_gap) * (c.gap.risk_gap - row.mean_risk_gap);
          vn += (c.gap.neutrality_gap - row.mean_neutrality_gap) *
                (c.gap.neutrality_gap - row.mean_neutrality_gap);
        }
        row.std_risk_gap = std::sqrt(vr / (count - 1.0));
        row.std_neutrality_gap = std::sqrt(vn / (count - 1.0));
      }
      result.rows.push_back(row);
      result.cells.insert(result.cells.end(), cells.begin(), cells.end());
    }
  }

  for (double eta : cfg.etas) {
    std::vector<double> xs, yr, yn;
    for (const GapRow& row : result.rows) {
      if (row.eta != eta) continue;
      xs.push_back(static_cast<double>(row.n));
      yr.push_back(row.mean_abs_risk_gap);
      yn.push_back(row.mean_abs_neutrality_gap);
    }
    GapSlopes s;
    s.eta = eta;
    s.risk_slope = loglog_slope(xs, yr);
    s.neutrality_slope = loglog_slope(xs, yn);
    result.slopes.push_back(s);
  }
  return result;
}

}  // namespace nsvm
