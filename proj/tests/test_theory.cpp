#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nsvm/data.hpp>
#include <nsvm/loss.hpp>
#include <nsvm/ops.hpp>
#include <nsvm/rng.hpp>
#include <nsvm/theory.hpp>

#include <cmath>
#include <cstdint>
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

}  // namespace

TEST_CASE("rademacher estimate on a single unit vector is exactly one") {
  Dataset data;
  data.add(std::vector<double>{1.0, 0.0, 0.0}, 1.0, 1.0);
  // every draw contributes a vector of norm one regardless of the sign
  CHECK(rademacher_linear(data, 1.0, 64, 0) == 1.0);
  CHECK(rademacher_linear(data, 1.0, 64, 123) == 1.0);
}

TEST_CASE("rademacher estimate vanishes on all-zero inputs") {
  Dataset data;
  for (int i = 0; i < 5; ++i) data.add(std::vector<double>{0.0, 0.0}, 1.0, i % 2 ? 1.0 : -1.0);
  CHECK(rademacher_linear(data, 2.5, 32, 9) == 0.0);
}

TEST_CASE("rademacher estimate on orthonormal rows hits the closed form") {
  // two orthonormal inputs: every sign pattern gives norm sqrt(2), so the
  // estimate is sqrt(2)/2 up to summation rounding
  for (double v2 : {1.0, -1.0}) {
    Dataset data;
    data.add(std::vector<double>{1.0, 0.0}, 1.0, 1.0);
    data.add(std::vector<double>{0.0, 1.0}, -1.0, v2);
    double got = rademacher_linear(data, 1.0, 200, 5);
    CHECK(got == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("rademacher estimate is exactly linear in the radius") {
  Dataset data = random_dataset(21, 17, 4);
  double base = rademacher_linear(data, 1.0, 100, 3);
  CHECK(base > 0.0);
  for (double r : {2.0, 3.0, 3.141592653589793, 0.25}) {
    CHECK(rademacher_linear(data, r, 100, 3) == r * base);
  }
}

TEST_CASE("rademacher estimate ignores a global viewpoint sign flip") {
  Dataset data = random_dataset(22, 13, 3);
  Dataset flipped;
  for (std::size_t i = 0; i < data.n; ++i) {
    std::vector<double> x(data.input(i).begin(), data.input(i).end());
    flipped.add(x, data.ys[i], -data.vs[i]);
  }
  CHECK(rademacher_linear(data, 1.5, 80, 11) == rademacher_linear(flipped, 1.5, 80, 11));
}

TEST_CASE("rademacher estimate is deterministic per seed") {
  Dataset data = random_dataset(23, 20, 5);
  CHECK(rademacher_linear(data, 1.0, 50, 7) == rademacher_linear(data, 1.0, 50, 7));
  CHECK(rademacher_linear(data, 1.0, 50, 7) != rademacher_linear(data, 1.0, 50, 8));
}

TEST_CASE("rademacher estimate validates its arguments") {
  Dataset empty;
  Dataset data = random_dataset(24, 3, 2);
  CHECK_THROWS_AS(rademacher_linear(empty, 1.0, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(rademacher_linear(data, -1.0, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(rademacher_linear(data, 1.0, 0, 0), std::invalid_argument);
}

TEST_CASE("relaxed neutrality ceiling takes known values") {
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 10.0;
  CHECK(corollary_bound(hp) == 1.0 + 1.0 / 10.0);
  hp.eta = 1.0;
  CHECK(corollary_bound(hp) == 2.0);
  hp.eta = 0.1;
  CHECK(corollary_bound(hp) == doctest::Approx(11.0).epsilon(1e-14));
}

TEST_CASE("relaxed neutrality ceiling decreases toward one") {
  Hyperparams hp;
  hp.lambda = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double eta : {0.01, 0.1, 0.5, 1.0, 5.0, 50.0, 1000.0}) {
    hp.eta = eta;
    double b = corollary_bound(hp);
    CHECK(b < prev);
    CHECK(b > 1.0);
    prev = b;
  }
  hp.eta = 1e12;
  CHECK(corollary_bound(hp) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relaxed neutrality ceiling rejects a zero penalty") {
  Hyperparams hp;
  hp.lambda = 1.0;
  hp.eta = 0.0;
  CHECK_THROWS_AS(corollary_bound(hp), std::invalid_argument);
}

TEST_CASE("deviation bound on the zero model has unit empirical term") {
  Dataset train = random_dataset(25, 50, 4);
  Dataset holdout = random_dataset(26, 30, 4);
  LinearModel model(4);
  BoundReport rep = neutrality_bound(model, train, holdout);
  CHECK(rep.empirical_neutrality == 1.0);
  CHECK(rep.c_cap == 1.0);      // hinge at the origin
  CHECK(rep.radius == 0.0);     // default: weight norm of the zero model
  CHECK(rep.rademacher_term == 0.0);
  double conf = std::sqrt(std::log(2.0 / 0.05) / (2.0 * 50.0));
  CHECK(rep.confidence_term == conf);
  CHECK(rep.total_bound == 1.0 + conf);
  CHECK(rep.holdout_neutrality == 1.0);
  CHECK(rep.holds_on_holdout);
}

TEST_CASE("deviation bound echoes explicit radius and cap") {
  Dataset train = random_dataset(27, 20, 3);
  Dataset holdout = random_dataset(28, 10, 3);
  LinearModel model(3);
  model.w = {0.4, -0.2, 0.1};
  model.b = 0.05;
  BoundConfig cfg;
  cfg.radius = 3.5;
  cfg.c_cap = 2.0;
  cfg.num_draws = 60;
  cfg.seed = 17;
  BoundReport rep = neutrality_bound(model, train, holdout, cfg);
  CHECK(rep.radius == 3.5);
  CHECK(rep.c_cap == 2.0);
  CHECK(rep.rademacher_term == rademacher_linear(train, 3.5, 60, 17));
  CHECK(rep.total_bound ==
        rep.empirical_neutrality + 2.0 * rep.rademacher_term + rep.confidence_term);
}

TEST_CASE("deviation bound defaults derive from the model and the data") {
  Dataset train = random_dataset(29, 25, 3);
  Dataset holdout = random_dataset(30, 15, 3);
  LinearModel model(3);
  model.w = {1.2, -0.7, 0.3};
  model.b = -0.2;
  BoundReport rep = neutrality_bound(model, train, holdout);
  CHECK(rep.radius == std::sqrt(ops::dot(model.w, model.w)));
  // cap: largest viewpoint hinge seen on either split, floored at one
  double cap = 1.0;
  for (const Dataset* part : {&train, &holdout}) {
    for (std::size_t i = 0; i < part->n; ++i) {
      double s = model.decision(part->input(i));
      cap = std::max(cap, hinge(part->vs[i] * s));
      cap = std::max(cap, hinge(-part->vs[i] * s));
    }
  }
  CHECK(rep.c_cap == cap);
  // the clipped empirical term matches a direct evaluation
  std::vector<double> scores(train.n);
  ops::decision_values(train, model.w, model.b, scores);
  CHECK(rep.empirical_neutrality ==
        relaxed_neutrality_clipped(train, scores, cap, Norm::mean).c_max);
}

TEST_CASE("deviation bound holds on fresh holdouts of trained models") {
  for (int rep = 0; rep < 10; ++rep) {
    SynthConfig sc;
    sc.n = 500;
    sc.d = 5;
    sc.seed = 40 + static_cast<std::uint64_t>(rep);
    Dataset train = gen_synthetic(sc);
    sc.seed = 140 + static_cast<std::uint64_t>(rep);
    Dataset holdout = gen_synthetic(sc);
    Hyperparams hp;
    hp.lambda = 5.0;
    hp.eta = 1.0;
    SubgradConfig cfg;
    cfg.max_iters = 4000;
    auto [model, report] = solve_primal(train, hp, cfg);
    BoundConfig bc;
    bc.num_draws = 100;
    bc.seed = static_cast<std::uint64_t>(rep);
    BoundReport br = neutrality_bound(model, train, holdout, bc);
    CHECK(br.total_bound >= br.empirical_neutrality);
    CHECK(br.holds_on_holdout);
  }
}

TEST_CASE("deviation bound validates delta and dimensions") {
  Dataset train = random_dataset(31, 10, 2);
  Dataset holdout = random_dataset(32, 10, 2);
  LinearModel model(2);
  for (double bad : {0.0, 1.0, -0.2, 1.5}) {
    BoundConfig cfg;
    cfg.delta = bad;
    CHECK_THROWS_AS(neutrality_bound(model, train, holdout, cfg), std::invalid_argument);
  }
  LinearModel wrong(3);
  CHECK_THROWS(neutrality_bound(wrong, train, holdout));
}

TEST_CASE("train test gap vanishes when the splits coincide") {
  Dataset data = random_dataset(33, 12, 3);
  LinearModel model(3);
  model.w = {0.3, 0.8, -0.5};
  model.b = 0.1;
  GapPair gap = generalization_gap(model, data, data);
  CHECK(gap.risk_gap == 0.0);
  CHECK(gap.neutrality_gap == 0.0);
}

TEST_CASE("train test gap vanishes for the zero model") {
  Dataset train = random_dataset(34, 15, 2);
  Dataset test = random_dataset(35, 9, 2);
  LinearModel model(2);
  GapPair gap = generalization_gap(model, train, test);
  CHECK(gap.risk_gap == 0.0);        // both risks are exactly one
  CHECK(gap.neutrality_gap == 0.0);  // both neutralities are exactly one
}

TEST_CASE("train test gap rejects empty splits") {
  Dataset data = random_dataset(36, 5, 2);
  Dataset empty;
  LinearModel model(2);
  CHECK_THROWS_AS(generalization_gap(model, data, empty), std::invalid_argument);
  CHECK_THROWS_AS(generalization_gap(model, empty, data), std::invalid_argument);
}

TEST_CASE("log-log slope recovers an exact power law") {
  std::vector<double> x{10.0, 20.0, 40.0, 80.0, 160.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.7 * std::pow(xi, -0.43));
  CHECK(loglog_slope(x, y) == doctest::Approx(-0.43).epsilon(1e-12));
  // sign of y does not matter; magnitudes drive the fit
  for (auto& yi : y) yi = -yi;
  CHECK(loglog_slope(x, y) == doctest::Approx(-0.43).epsilon(1e-12));
}

TEST_CASE("log-log slope skips zero gaps") {
  std::vector<double> x{10.0, 20.0, 40.0, 80.0};
  std::vector<double> y{2.0 * std::pow(10.0, 0.8), 0.0, 2.0 * std::pow(40.0, 0.8),
                        2.0 * std::pow(80.0, 0.8)};
  CHECK(loglog_slope(x, y) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("log-log slope rejects degenerate inputs") {
  std::vector<double> one_x{10.0};
  std::vector<double> one_y{1.0};
  CHECK_THROWS_AS(loglog_slope(one_x, one_y), std::invalid_argument);
  std::vector<double> x2{10.0, 20.0};
  std::vector<double> y2{1.0, 0.0};  // only one usable point after the skip
  CHECK_THROWS_AS(loglog_slope(x2, y2), std::invalid_argument);
  std::vector<double> same_x{10.0, 10.0, 10.0};
  std::vector<double> y3{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(loglog_slope(same_x, y3), std::invalid_argument);
  std::vector<double> mismatch{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(loglog_slope(x2, mismatch), std::invalid_argument);
}

TEST_CASE("gap study produces consistent rows cells and slopes") {
  GapStudyConfig cfg;
  cfg.ns = {40, 80};
  cfg.etas = {1.0};
  cfg.d = 3;
  cfg.folds = 2;
  cfg.repeats = 2;
  cfg.seed = 7;
  cfg.solver.max_iters = 400;
  cfg.solver.patience = 0;
  GapStudyResult res = gap_study(cfg);
  CHECK(res.rows.size() == 2);
  CHECK(res.cells.size() == 8);
  CHECK(res.slopes.size() == 1);

  for (const GapRow& row : res.rows) {
    double mr = 0.0, mn = 0.0, ar = 0.0, an = 0.0;
    std::size_t count = 0;
    for (const GapCell& c : res.cells) {
      if (c.n != row.n || c.eta != row.eta) continue;
      CHECK(c.repeat < cfg.repeats);
      CHECK(c.fold < cfg.folds);
      CHECK(c.bound_total == 0.0);  // bounds were not requested
      mr += c.gap.risk_gap;
      mn += c.gap.neutrality_gap;
      ar += std::abs(c.gap.risk_gap);
      an += std::abs(c.gap.neutrality_gap);
      ++count;
    }
    CHECK(count == 4);
    CHECK(row.mean_risk_gap == doctest::Approx(mr / 4.0).epsilon(1e-12));
    CHECK(row.mean_neutrality_gap == doctest::Approx(mn / 4.0).epsilon(1e-12));
    CHECK(row.mean_abs_risk_gap == doctest::Approx(ar / 4.0).epsilon(1e-12));
    CHECK(row.mean_abs_neutrality_gap == doctest::Approx(an / 4.0).epsilon(1e-12));
    CHECK(row.mean_abs_risk_gap >= std::abs(row.mean_risk_gap));
    CHECK(row.std_risk_gap >= 0.0);
  }

  // deterministic end to end
  GapStudyResult again = gap_study(cfg);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].mean_risk_gap == again.rows[i].mean_risk_gap);
    CHECK(res.rows[i].mean_neutrality_gap == again.rows[i].mean_neutrality_gap);
  }
}

TEST_CASE("gap study audits bounds when asked") {
  GapStudyConfig cfg;
  cfg.ns = {50, 100};
  cfg.etas = {1.0};
  cfg.d = 3;
  cfg.folds = 2;
  cfg.repeats = 1;
  cfg.seed = 11;
  cfg.solver.max_iters = 400;
  cfg.solver.patience = 0;
  cfg.with_bounds = true;
  cfg.bound_draws = 40;
  GapStudyResult res = gap_study(cfg);
  for (const GapRow& row : res.rows) {
    CHECK(row.mean_bound > 0.0);
    CHECK(row.bound_hold_rate >= 0.0);
    CHECK(row.bound_hold_rate <= 1.0);
  }
}

TEST_CASE("gap study validates its configuration") {
  GapStudyConfig cfg;
  cfg.ns = {};
  CHECK_THROWS_AS(gap_study(cfg), std::invalid_argument);
  cfg.ns = {40, 80};
  cfg.etas = {};
  CHECK_THROWS_AS(gap_study(cfg), std::invalid_argument);
  cfg.etas = {1.0};
  cfg.folds = 1;
  CHECK_THROWS_AS(gap_study(cfg), std::invalid_argument);
  cfg.folds = 2;
  cfg.repeats = 0;
  CHECK_THROWS_AS(gap_study(cfg), std::invalid_argument);
}
