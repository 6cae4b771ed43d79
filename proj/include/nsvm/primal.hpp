#pragma once

#include <span>
#include <utility>

#include "nsvm/types.hpp"

namespace nsvm {

enum class StepRule {
  constant,    // step_constant
  inv_sqrt,    // step_constant / sqrt(t)
  inv_lambda_t // 1 / (lambda * t)
};

struct SubgradConfig {
  std::size_t max_iters = 20000;      // >= 1
  StepRule step_rule = StepRule::inv_sqrt;
  double step_constant = 0.0;         // > 0; 0 means auto (1/lambda)
  double tol = 1e-7;                  // >= 0; improvement threshold
  std::size_t patience = 200;         // stop after this many non-improving iterations
  double tie_alpha = 0.5;             // hinge-knee / neutrality-tie coefficient, in [0,1]
  std::size_t trace_stride = 1;
};

struct Subgrad {
  std::vector<double> gw;
  double gb = 0.0;
};

// One subgradient of the training objective at the given model. At hinge
// knees and at c_plus == c_minus ties any convex combination is valid;
// tie_alpha picks a fixed one so the output is deterministic.
Subgrad subgradient(const LinearModel& model, const Dataset& data, const Hyperparams& hp,
                    double tie_alpha = 0.5);

// Projected-free subgradient descent from the zero model, returning the best
// iterate seen. Objective uses plain sums, so the zero model scores
// n * (1 + eta) and the result can never exceed that.
std::pair<LinearModel, SolveReport> solve_primal(const Dataset& data, const Hyperparams& hp,
                                                 const SubgradConfig& cfg = {});

}  // namespace nsvm
