#pragma once

#include <span>
#include <vector>

#include "nsvm/types.hpp"

// Bulk compute kernels. The default entry points are OpenMP-parallel; each
// has a _serial twin that is the reference implementation for tests and the
// benchmark target. Reductions run over a fixed chunk grid and combine the
// partials in chunk order, so results are identical for any thread count.
namespace nsvm::ops {

inline constexpr int reduce_chunks = 64;

// [begin, end) of chunk c when splitting count items into parts pieces
inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t count, int c, int parts) {
  return {count * static_cast<std::size_t>(c) / parts,
          count * static_cast<std::size_t>(c + 1) / parts};
}

double dot(std::span<const double> a, std::span<const double> b);

double sum(std::span<const double> values);
double sum_serial(std::span<const double> values);

// out[i] = w.x_i + b
void decision_values(const Dataset& data, std::span<const double> w, double b,
                     std::span<double> out);
void decision_values_serial(const Dataset& data, std::span<const double> w, double b,
                            std::span<double> out);

// Hinge totals of one score pass: loss over targets, and the two
// viewpoint-side sums.
struct MarginSums {
  double loss = 0.0;     // sum_i hinge(y_i * s_i)
  double c_plus = 0.0;   // sum_i hinge(+v_i * s_i)
  double c_minus = 0.0;  // sum_i hinge(-v_i * s_i)
};

MarginSums margin_sums(const Dataset& data, std::span<const double> scores);
MarginSums margin_sums_serial(const Dataset& data, std::span<const double> scores);

// number of i with sgn(scores[i]) == v_i, where sgn(0) := +1
std::size_t agree_count(const Dataset& data, std::span<const double> scores);

// sum_i coef[i] * x_i
std::vector<double> weighted_input_sum(const Dataset& data, std::span<const double> coef);
std::vector<double> weighted_input_sum_serial(const Dataset& data, std::span<const double> coef);

}  // namespace nsvm::ops
