#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsvm {

// One labeled observation: inputs x, target label y, viewpoint label v.
struct Sample {
  std::vector<double> x;
  double y = 1.0;
  double v = 1.0;
};

// Struct-of-arrays sample store. Inputs are kept row-major in one flat
// buffer so the bulk kernels can stream over them.
struct Dataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> xs;  // n*d, row-major
  std::vector<double> ys;  // each in {-1,+1}
  std::vector<double> vs;  // each in {-1,+1}

  Dataset() = default;
  explicit Dataset(std::size_t dim) : d(dim) {
    if (dim == 0) throw std::invalid_argument("Dataset: dimension must be >= 1");
  }

  std::span<const double> input(std::size_t i) const {
    return std::span<const double>(xs.data() + i * d, d);
  }

  void reserve(std::size_t count) {
    xs.reserve(count * d);
    ys.reserve(count);
    vs.reserve(count);
  }

  void add(std::span<const double> x, double y, double v);
  void add(const Sample& s) { add(std::span<const double>(s.x), s.y, s.v); }
};

Dataset subset(const Dataset& data, std::span<const std::size_t> indices);

// Linear classifier f(x) = w.x + b.
struct LinearModel {
  std::vector<double> w;
  double b = 0.0;

  LinearModel() = default;
  explicit LinearModel(std::size_t d) : w(d, 0.0) {}

  std::size_t dim() const { return w.size(); }

  double decision(std::span<const double> x) const {
    if (x.size() != w.size())
      throw std::invalid_argument("LinearModel::decision: dimension mismatch");
    double s = b;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
    return s;
  }
};

struct Hyperparams {
  double lambda = 1.0;  // regularization weight, > 0
  double eta = 0.0;     // neutralization weight, >= 0
};

inline void validate(const Hyperparams& hp) {
  if (!(hp.lambda > 0.0) || !std::isfinite(hp.lambda))
    throw std::invalid_argument("Hyperparams: lambda must be positive");
  if (!(hp.eta >= 0.0) || !std::isfinite(hp.eta))
    throw std::invalid_argument("Hyperparams: eta must be nonnegative");
}

inline void check_dims(const LinearModel& model, const Dataset& data) {
  if (model.dim() != data.d)
    throw std::invalid_argument("dimension mismatch: model d=" + std::to_string(model.dim()) +
                                ", data d=" + std::to_string(data.d));
}

// Whether risk-style quantities are averaged or summed over samples.
enum class Norm { mean, sum };

enum class Termination { tol_reached, max_iters, stalled };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::tol_reached: return "tol_reached";
    case Termination::max_iters: return "max_iters";
    case Termination::stalled: return "stalled";
  }
  return "?";
}

// Extra diagnostics attached to dual solves.
struct DualDiagnostics {
  double dual_objective = 0.0;     // best dual value mapped to primal units
  double primal_objective = 0.0;   // objective of the recovered model
  double duality_gap = 0.0;        // primal_objective - dual_objective
  double kkt_gap = 0.0;            // m(gamma) - M(gamma) at termination
};

struct SolveReport {
  double best_objective = 0.0;
  std::vector<double> objective_trace;  // every trace_stride-th iterate, plus the last
  std::size_t trace_stride = 1;
  std::size_t iterations = 0;
  Termination termination = Termination::max_iters;
  std::optional<DualDiagnostics> dual;
};

}  // namespace nsvm
