#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nsvm/kernel.hpp"
#include "nsvm/primal.hpp"
#include "nsvm/smo.hpp"
#include "nsvm/types.hpp"

namespace nsvm {

// Mann-Whitney AUC with tied scores counted half. Throws on single-class input.
double auc(std::span<const double> scores, std::span<const double> labels);

// Spearman rank correlation (average ranks on ties).
double spearman(std::span<const double> a, std::span<const double> b);

enum class SolverKind { primal, dual };
const char* to_string(SolverKind kind);

struct SweepConfig {
  std::vector<double> eta_grid;
  double lambda = 1.0;  // fixed across the sweep; only eta varies
  SolverKind solver = SolverKind::primal;
  KernelSpec kernel;  // dual solver only
  std::size_t folds = 5;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  SubgradConfig primal;
  SmoConfig smo;
};

// One (eta, repeat, fold) evaluation.
struct SweepCell {
  std::size_t eta_index = 0;
  std::size_t repeat = 0;
  std::size_t fold = 0;
  double eta = 0.0;
  bool ok = false;
  std::string error;
  bool converged = false;
  double auc = std::numeric_limits<double>::quiet_NaN();  // NaN if test fold single-class
  double test_neutrality = 0.0;           // sign-based, on the test fold
  double train_neutrality = 0.0;          // relaxed c_max, normalized, on the train fold
  double corollary_limit = 0.0;           // 1 + 1/eta (inf at eta = 0)
  bool corollary_ok = false;              // train_neutrality <= limit + 1e-2
  double risk_gap = 0.0;
  double neutrality_gap = 0.0;
};

struct SweepRow {
  double eta = 0.0;
  double lambda = 0.0;
  double mean_auc = 0.0;
  double std_auc = 0.0;
  double mean_neutrality = 0.0;  // sign-based test neutrality
  double std_neutrality = 0.0;
  double mean_risk_gap = 0.0;
  double mean_neutrality_gap = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;    // one per eta grid point
  std::vector<SweepCell> cells;  // raw per-fold values
};

SweepResult run_sweep(const Dataset& data, const SweepConfig& cfg);

// indices of rows not dominated in (higher AUC, lower neutrality);
// rows with NaN mean_auc are dropped
std::vector<std::size_t> pareto_keep(std::span<const SweepRow> rows);
SweepResult pareto_filter(const SweepResult& result);

// rows as CSV in the stable column order
std::string sweep_to_csv(const SweepResult& result);

}  // namespace nsvm
