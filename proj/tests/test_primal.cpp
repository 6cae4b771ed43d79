#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nsvm/loss.hpp>
#include <nsvm/primal.hpp>
#include <nsvm/rng.hpp>
#include <nsvm/types.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace nsvm;

namespace {

Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t d) {
  SplitMix64 rng(seed);
  Dataset data;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& xi : x) xi = rng.uniform_pm1();
    data.add(x, rng.sign(), rng.sign());
  }
  return data;
}

LinearModel random_model(std::uint64_t seed, std::size_t d) {
  SplitMix64 rng(seed);
  LinearModel m;
  m.w.resize(d);
  for (auto& wi : m.w) wi = rng.uniform_pm1();
  m.b = rng.uniform_pm1();
  return m;
}

// objective as a function of the stacked point (w_0..w_{d-1}, b)
double objective_at(const Dataset& data, const Hyperparams& hp, const std::vector<double>& p) {
  LinearModel m;
  m.w.assign(p.begin(), p.end() - 1);
  m.b = p.back();
  return nerm_objective(m, data, hp);
}

// true when every hinge argument and the branch comparison sit away from their kinks
bool differentiable_at(const Dataset& data, const LinearModel& m, double gap) {
  double cp = 0.0, cm = 0.0;
  for (std::size_t i = 0; i < data.n; ++i) {
    double f = m.decision(data.input(i));
    if (std::abs(data.ys[i] * f - 1.0) < gap) return false;
    if (std::abs(data.vs[i] * f - 1.0) < gap) return false;
    if (std::abs(-data.vs[i] * f - 1.0) < gap) return false;
    cp += hinge(data.vs[i] * f);
    cm += hinge(-data.vs[i] * f);
  }
  return std::abs(cp - cm) > gap;
}

// three-parameter refined grid search used as an independent minimizer
double grid_minimum(const Dataset& data, const Hyperparams& hp) {
  double cx = 0.0, cy = 0.0, cb = 0.0;
  double range = 4.0;
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 5; ++level) {
    const int steps = 32;
    double h = 2.0 * range / steps;
    double bx = cx, by = cy, bb = cb;
    for (int a = 0; a <= steps; ++a)
      for (int b = 0; b <= steps; ++b)
        for (int c = 0; c <= steps; ++c) {
          std::vector<double> p{cx - range + a * h, cy - range + b * h, cb - range + c * h};
          double val = objective_at(data, hp, p);
          if (val < best) {
            best = val;
            bx = p[0];
            by = p[1];
            bb = p[2];
          }
        }
    cx = bx;
    cy = by;
    cb = bb;
    range = 2.0 * h;  // keep the next window wider than one old cell
  }
  return best;
}

}  // namespace

TEST_CASE("subgradient config validation") {
  Dataset data = random_dataset(1, 4, 2);
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 0.0;
  SubgradConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(solve_primal(data, hp, cfg), std::invalid_argument);
  cfg = SubgradConfig{};
  cfg.tie_alpha = 1.5;
  CHECK_THROWS_AS(solve_primal(data, hp, cfg), std::invalid_argument);
  cfg = SubgradConfig{};
  cfg.tol = -1.0;
  CHECK_THROWS_AS(solve_primal(data, hp, cfg), std::invalid_argument);
  cfg = SubgradConfig{};
  cfg.step_constant = -2.0;
  CHECK_THROWS_AS(solve_primal(data, hp, cfg), std::invalid_argument);
  cfg = SubgradConfig{};
  cfg.trace_stride = 0;
  CHECK_THROWS_AS(solve_primal(data, hp, cfg), std::invalid_argument);
}

TEST_CASE("subgradient rejects mismatched dimensions") {
  Dataset data = random_dataset(2, 5, 3);
  LinearModel m = random_model(3, 4);
  Hyperparams hp;
  CHECK_THROWS_AS(subgradient(m, data, hp, 0.5), std::invalid_argument);
}

TEST_CASE("subgradient is lambda w when only the regularizer is active") {
  // every classification margin above one and eta zero: the loss part vanishes
  Dataset data;
  data.add(std::vector<double>{2.0, 0.0}, 1.0, 1.0);
  data.add(std::vector<double>{-3.0, 0.5}, -1.0, -1.0);
  LinearModel m;
  m.w = {1.0, 0.0};
  m.b = 0.0;
  Hyperparams hp;
  hp.lambda = 2.5;
  hp.eta = 0.0;
  Subgrad g = subgradient(m, data, hp, 0.5);
  CHECK(g.gw[0] == 2.5 * 1.0);
  CHECK(g.gw[1] == 0.0);
  CHECK(g.gb == 0.0);
}

TEST_CASE("subgradient matches central finite differences at smooth points") {
  SplitMix64 rng(11);
  int accepted = 0;
  int attempts = 0;
  while (accepted < 100 && attempts < 3000) {
    ++attempts;
    std::size_t n = 2 + rng.below(20);
    std::size_t d = 1 + rng.below(4);
    Dataset data = random_dataset(100 + attempts, n, d);
    LinearModel m = random_model(200 + attempts, d);
    if (!differentiable_at(data, m, 1e-3)) continue;
    ++accepted;
    Hyperparams hp;
    hp.lambda = 0.2 + rng.uniform01() * 2.0;
    hp.eta = rng.uniform01() * 4.0;

    Subgrad g = subgradient(m, data, hp, 0.5);
    std::vector<double> p(m.w);
    p.push_back(m.b);
    const double h = 1e-6;
    double err_sq = 0.0, norm_sq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::vector<double> lo = p, hi = p;
      lo[k] -= h;
      hi[k] += h;
      double fd = (objective_at(data, hp, hi) - objective_at(data, hp, lo)) / (2.0 * h);
      double gk = k < m.w.size() ? g.gw[k] : g.gb;
      err_sq += (fd - gk) * (fd - gk);
      norm_sq += gk * gk;
    }
    CHECK(std::sqrt(err_sq) <= 1e-5 * std::max(1.0, std::sqrt(norm_sq)));
  }
  REQUIRE(accepted == 100);
}

TEST_CASE("subgradient inequality holds at kink points") {
  // the first sample sits exactly at the hinge knee
  Dataset data;
  data.add(std::vector<double>{1.0, 0.0}, 1.0, 1.0);
  data.add(std::vector<double>{-0.3, 0.7}, -1.0, -1.0);
  data.add(std::vector<double>{0.2, -0.4}, 1.0, -1.0);
  LinearModel m;
  m.w = {1.0, 0.0};
  m.b = 0.0;
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 1.5;
  std::vector<double> p(m.w);
  p.push_back(m.b);
  double fp = objective_at(data, hp, p);

  SplitMix64 rng(21);
  for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
    Subgrad g = subgradient(m, data, hp, alpha);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> q{rng.uniform_pm1() * 3, rng.uniform_pm1() * 3, rng.uniform_pm1() * 3};
      double lin = fp;
      for (std::size_t k = 0; k < 2; ++k) lin += g.gw[k] * (q[k] - p[k]);
      lin += g.gb * (q[2] - p[2]);
      CHECK(objective_at(data, hp, q) >= lin - 1e-9);
    }
  }
}

TEST_CASE("subgradient inequality holds at the zero model where both branches tie") {
  Dataset data = random_dataset(31, 12, 3);
  LinearModel zero(3);
  Hyperparams hp;
  hp.lambda = 0.8;
  hp.eta = 2.0;
  std::vector<double> p(4, 0.0);
  double fp = objective_at(data, hp, p);
  CHECK(fp == doctest::Approx(12.0 * 3.0).epsilon(1e-14));  // n * (1 + eta)

  SplitMix64 rng(32);
  for (double alpha : {0.0, 0.5, 1.0}) {
    Subgrad g = subgradient(zero, data, hp, alpha);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> q{rng.uniform_pm1() * 2, rng.uniform_pm1() * 2, rng.uniform_pm1() * 2,
                            rng.uniform_pm1() * 2};
      double lin = fp;
      for (std::size_t k = 0; k < 3; ++k) lin += g.gw[k] * q[k];
      lin += g.gb * q[3];
      CHECK(objective_at(data, hp, q) >= lin - 1e-9);
    }
  }
}

TEST_CASE("solver separates a separable two-point problem at eta zero") {
  Dataset data;
  data.add(std::vector<double>{1.0}, 1.0, 1.0);
  data.add(std::vector<double>{-1.0}, -1.0, -1.0);
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 0.0;
  SubgradConfig cfg;
  cfg.max_iters = 20000;
  auto [model, report] = solve_primal(data, hp, cfg);
  CHECK(model.decision(data.input(0)) > 0.0);
  CHECK(model.decision(data.input(1)) < 0.0);
  CHECK(report.best_objective <= 2.0 + 1e-12);
}

TEST_CASE("solver result never exceeds the zero-model objective") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t n = 3 + rng.below(25);
    Dataset data = random_dataset(300 + trial, n, 3);
    Hyperparams hp;
    hp.lambda = 0.2 + rng.uniform01() * 2.0;
    hp.eta = rng.uniform01() * 8.0;
    SubgradConfig cfg;
    cfg.max_iters = 4000;
    auto [model, report] = solve_primal(data, hp, cfg);
    double zero_obj = static_cast<double>(n) * (1.0 + hp.eta);
    CHECK(report.best_objective <= zero_obj + 1e-9);
    CHECK(report.best_objective == doctest::Approx(nerm_objective(model, data, hp)).epsilon(1e-12));
  }
}

TEST_CASE("report trace minimum equals the best objective") {
  Dataset data = random_dataset(51, 15, 2);
  Hyperparams hp;
  hp.lambda = 0.5;
  hp.eta = 1.0;
  for (std::size_t stride : {std::size_t{1}, std::size_t{7}, std::size_t{100}}) {
    SubgradConfig cfg;
    cfg.max_iters = 1500;
    cfg.trace_stride = stride;
    auto [model, report] = solve_primal(data, hp, cfg);
    REQUIRE(!report.objective_trace.empty());
    double mn = *std::min_element(report.objective_trace.begin(), report.objective_trace.end());
    CHECK(mn == report.best_objective);
    CHECK(report.iterations <= cfg.max_iters);
  }
}

TEST_CASE("solver is deterministic across runs") {
  Dataset data = random_dataset(61, 20, 4);
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 0.5;
  SubgradConfig cfg;
  cfg.max_iters = 3000;
  auto [m1, r1] = solve_primal(data, hp, cfg);
  auto [m2, r2] = solve_primal(data, hp, cfg);
  CHECK(m1.b == m2.b);
  for (std::size_t j = 0; j < m1.w.size(); ++j) CHECK(m1.w[j] == m2.w[j]);
  CHECK(r1.best_objective == r2.best_objective);
  CHECK(r1.objective_trace == r2.objective_trace);
}

TEST_CASE("small instance objective matches a refined grid search") {
  Dataset data = random_dataset(71, 6, 2);
  Hyperparams hp;
  hp.lambda = 2.0;
  hp.eta = 1.0;
  SubgradConfig cfg;
  cfg.max_iters = 300000;
  cfg.step_rule = StepRule::inv_lambda_t;
  cfg.patience = 0;  // run the full budget
  auto [model, report] = solve_primal(data, hp, cfg);
  double grid_best = grid_minimum(data, hp);
  CHECK(std::abs(report.best_objective - grid_best) <= 1e-3);
}

TEST_CASE("normalized relaxed neutrality of a solve respects the eta tradeoff cap") {
  for (double eta : {0.1, 1.0, 10.0}) {
    Dataset data = random_dataset(400 + static_cast<std::uint64_t>(eta * 10), 30, 3);
    Hyperparams hp;
    hp.lambda = 0.5;
    hp.eta = eta;
    SubgradConfig cfg;
    cfg.max_iters = 8000;
    auto [model, report] = solve_primal(data, hp, cfg);
    RelaxedNeutrality rn = relaxed_neutrality(model, data, Norm::mean);
    CHECK(rn.c_max <= 1.0 + 1.0 / eta + 1e-2);
  }
}

TEST_CASE("tightening neutrality can only raise the classification loss") {
  SplitMix64 rng(91);
  for (int trial = 0; trial < 3; ++trial) {
    std::size_t n = 20 + rng.below(20);
    Dataset data = random_dataset(500 + trial, n, 3);
    Hyperparams hp0;
    hp0.lambda = 1.0;
    hp0.eta = 0.0;
    SubgradConfig cfg;
    cfg.max_iters = 20000;
    cfg.step_rule = StepRule::inv_lambda_t;
    auto [base, rb] = solve_primal(data, hp0, cfg);

    Hyperparams hp1 = hp0;
    hp1.eta = 2.0;
    auto [tight, rt] = solve_primal(data, hp1, cfg);

    const double slack = 1e-2 * static_cast<double>(n);
    double r0 = empirical_risk(base, data, Norm::sum);
    double r1 = empirical_risk(tight, data, Norm::sum);
    double c0 = relaxed_neutrality(base, data, Norm::sum).c_max;
    double c1 = relaxed_neutrality(tight, data, Norm::sum).c_max;
    CHECK(r1 >= r0 - slack);
    CHECK(r1 - r0 <= hp1.eta * (c0 - c1) + slack);
  }
}

TEST_CASE("termination reflects the stopping condition") {
  Dataset data = random_dataset(101, 10, 2);
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 0.0;
  SubgradConfig quick;
  quick.max_iters = 5;
  quick.patience = 0;
  auto [m1, r1] = solve_primal(data, hp, quick);
  CHECK(r1.termination == Termination::max_iters);
  CHECK(r1.iterations == 5);

  SubgradConfig patient;
  patient.max_iters = 50000;
  patient.tol = 1e-4;
  patient.patience = 50;
  auto [m2, r2] = solve_primal(data, hp, patient);
  CHECK(r2.termination == Termination::tol_reached);
  CHECK(r2.iterations < patient.max_iters);
}
