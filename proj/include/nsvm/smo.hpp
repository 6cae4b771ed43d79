#pragma once

#include <algorithm>
#include <limits>
#include <utility>

#include "nsvm/kernel.hpp"
#include "nsvm/types.hpp"

namespace nsvm {

// State of the 3n-variable QP
//   min f(gamma) = (1/2) gamma'Q gamma - lambda*sum(gamma)
//   s.t. t'gamma = 0, 0 <= alpha_i <= 1,
//        0 <= beta+_i <= nu+, 0 <= beta-_i <= nu-,
// with gamma = (alpha, beta+, beta-) stacked in blocks of n. grad caches
// Q*gamma - lambda*1 and is maintained incrementally by update_pair.
//
// The max() in the neutrality term dualizes into two shared block caps nu+
// and nu- with nu+ + nu- <= eta, not into independent per-sample budgets
// (each is bounded by the caps, so beta+_i + beta-_i <= eta still holds
// pointwise). Raising the caps only enlarges the feasible box, so optima
// saturate nu+ + nu- = eta and the cap pair reduces to a scalar split
// nu+ = s, nu- = eta - s. At fixed s this is a plain box QP with one
// equality, where the m - M <= eps certificate characterizes stationarity;
// solve_smo maximizes the concave value function over s.
struct DualState {
  std::size_t n = 0;
  Hyperparams hp;
  double nu_plus = 0.0;   // shared cap of the beta+ block
  double nu_minus = 0.0;  // shared cap of the beta- block
  std::vector<double> gamma;
  std::vector<double> grad;
  QMatrix q;

  // starts at the symmetric split nu+ = nu- = eta/2
  DualState(const Dataset& data, const KernelSpec& kernel, const Hyperparams& hp_in,
            std::size_t cache_bytes = 1u << 26);

  const std::vector<double>& t() const { return q.t(); }

  // upper end of coordinate I's box
  double box_top(std::size_t I) const {
    return I < n ? 1.0 : (I < 2 * n ? nu_plus : nu_minus);
  }

  // rewind to gamma = 0 under the split nu+ = s, nu- = eta - s (Q cache kept)
  void reset_split(double s);

  // certificate value -t_I^{-1} grad_I
  double kkt_value(std::size_t I) const { return -q.t()[I] * grad[I]; }

  // clamped pair updates leave rounding dust next to the box edges; anything
  // this close to an edge counts as sitting on it, or zero-width slices would
  // re-enter the working set and stall the solver
  double bound_dust(std::size_t I) const { return 1e-12 * (1.0 + box_top(I)); }

  bool in_up(std::size_t I) const {
    const double dust = bound_dust(I);
    return q.t()[I] > 0.0 ? gamma[I] < box_top(I) - dust : gamma[I] > dust;
  }
  bool in_low(std::size_t I) const {
    const double dust = bound_dust(I);
    return q.t()[I] > 0.0 ? gamma[I] > dust : gamma[I] < box_top(I) - dust;
  }
};

DualState init_state(const Dataset& data, const KernelSpec& kernel, const Hyperparams& hp,
                     std::size_t cache_bytes = 1u << 26);

// f(gamma), current dual objective in min form
double dual_objective(const DualState& state);

// m = max over I_up of -t_I grad_I, M = min over I_low (KKT certificates)
struct KktValues {
  double m = -std::numeric_limits<double>::infinity();
  double M = std::numeric_limits<double>::infinity();
  bool has_up = false;
  bool has_low = false;
};
KktValues kkt_values(const DualState& state);

struct WorkingSet {
  bool converged = true;
  std::size_t i = 0;
  std::size_t j = 0;
  double m = 0.0;
  double M = 0.0;
};

// Second-order pair selection: i maximizes -t_I grad_I over I_up; j minimizes
// -B^2/A over I_low entries below that value. Converged when m - M <= eps or
// no eligible pair remains.
WorkingSet select_working_set(DualState& state, double eps);

// Closed-form minimization of f over the 2-variable slice {i, j} holding
// t'gamma fixed, clipped to the feasible interval. Returns false when the
// step is a no-op. Flat slices (A ~ 0, e.g. the beta+/beta- pair of one
// sample) get their curvature clamped, which sends the step to the box edge
// in the descent direction.
bool update_pair(DualState& state, std::size_t i, std::size_t j);

// bias such that free coordinates meet their stationarity conditions
double recover_bias(const DualState& state);

struct KernelModel {
  std::vector<double> coefficients;  // a_i of retained samples
  std::vector<double> support_xs;    // flat row-major inputs
  std::size_t d = 0;
  double bias = 0.0;
  KernelSpec kernel;
  double lambda = 1.0;

  std::size_t support_count() const { return coefficients.size(); }
  std::span<const double> input(std::size_t i) const {
    return std::span<const double>(support_xs.data() + i * d, d);
  }
};

double predict(const KernelModel& model, std::span<const double> x);
std::vector<double> predict(const KernelModel& model, const Dataset& data);

// linear kernel only: assemble w = (1/lambda) sum a_i x_i explicitly
LinearModel explicit_weights(const KernelModel& model);

struct SmoConfig {
  double eps = 1e-3;
  std::size_t max_iters = 10'000'000;  // total pair updates across all splits
  std::size_t cache_bytes = 1u << 26;
  std::size_t trace_stride = 1024;
};

// Full solve: golden-section search over the cap split s (the dual value is
// concave in s), each evaluation running the pair-update loop on the fixed
// box QP from gamma = 0 until m - M <= eps. The returned model and
// diagnostics come from the best split found.
std::pair<KernelModel, SolveReport> solve_smo(const Dataset& data, const KernelSpec& kernel,
                                              const Hyperparams& hp, const SmoConfig& cfg = {});

}  // namespace nsvm
