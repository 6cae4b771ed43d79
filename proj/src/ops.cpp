#include "nsvm/ops.hpp"

#include <array>
#include <cstdint>

#include "nsvm/loss.hpp"

namespace nsvm::ops {

namespace {

void check_scores(const Dataset& data, std::span<const double> scores) {
  if (scores.size() != data.n)
    throw std::invalid_argument("scores size does not match dataset");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double sum_serial(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double sum(std::span<const double> values) {
  const std::size_t n = values.size();
  std::array<double, reduce_chunks> part{};
#pragma omp parallel for schedule(static) if (n > 8192)
  for (int c = 0; c < reduce_chunks; ++c) {
    auto [lo, hi] = chunk_range(n, c, reduce_chunks);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += values[i];
    part[c] = s;
  }
  double total = 0.0;
  for (int c = 0; c < reduce_chunks; ++c) total += part[c];
  return total;
}

void decision_values_serial(const Dataset& data, std::span<const double> w, double b,
                            std::span<double> out) {
  if (w.size() != data.d) throw std::invalid_argument("decision_values: weight size mismatch");
  if (out.size() != data.n) throw std::invalid_argument("decision_values: output size mismatch");
  const std::size_t d = data.d;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double* x = data.xs.data() + i * d;
    double s = b;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * x[j];
    out[i] = s;
  }
}

void decision_values(const Dataset& data, std::span<const double> w, double b,
                     std::span<double> out) {
  if (w.size() != data.d) throw std::invalid_argument("decision_values: weight size mismatch");
  if (out.size() != data.n) throw std::invalid_argument("decision_values: output size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(data.n);
  const std::size_t d = data.d;
  const double* xs = data.xs.data();
#pragma omp parallel for schedule(static) if (n * static_cast<std::int64_t>(d) > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const double* x = xs + static_cast<std::size_t>(i) * d;
    double s = b;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * x[j];
    out[i] = s;
  }
}

MarginSums margin_sums_serial(const Dataset& data, std::span<const double> scores) {
  check_scores(data, scores);
  MarginSums m;
  for (std::size_t i = 0; i < data.n; ++i) {
    m.loss += hinge(data.ys[i] * scores[i]);
    m.c_plus += hinge(data.vs[i] * scores[i]);
    m.c_minus += hinge(-data.vs[i] * scores[i]);
  }
  return m;
}

MarginSums margin_sums(const Dataset& data, std::span<const double> scores) {
  check_scores(data, scores);
  const std::size_t n = data.n;
  std::array<MarginSums, reduce_chunks> part{};
#pragma omp parallel for schedule(static) if (n > 4096)
  for (int c = 0; c < reduce_chunks; ++c) {
    auto [lo, hi] = chunk_range(n, c, reduce_chunks);
    MarginSums m;
    for (std::size_t i = lo; i < hi; ++i) {
      m.loss += hinge(data.ys[i] * scores[i]);
      m.c_plus += hinge(data.vs[i] * scores[i]);
      m.c_minus += hinge(-data.vs[i] * scores[i]);
    }
    part[c] = m;
  }
  MarginSums total;
  for (int c = 0; c < reduce_chunks; ++c) {
    total.loss += part[c].loss;
    total.c_plus += part[c].c_plus;
    total.c_minus += part[c].c_minus;
  }
  return total;
}

std::size_t agree_count(const Dataset& data, std::span<const double> scores) {
  check_scores(data, scores);
  const std::int64_t n = static_cast<std::int64_t>(data.n);
  std::size_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) if (n > 8192)
  for (std::int64_t i = 0; i < n; ++i) {
    const double sign = scores[i] >= 0.0 ? 1.0 : -1.0;  // sgn(0) := +1
    if (sign == data.vs[i]) ++count;
  }
  return count;
}

std::vector<double> weighted_input_sum_serial(const Dataset& data, std::span<const double> coef) {
  if (coef.size() != data.n) throw std::invalid_argument("weighted_input_sum: coef size mismatch");
  const std::size_t d = data.d;
  std::vector<double> acc(d, 0.0);
  for (std::size_t i = 0; i < data.n; ++i) {
    const double ci = coef[i];
    if (ci == 0.0) continue;
    const double* x = data.xs.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) acc[j] += ci * x[j];
  }
  return acc;
}

std::vector<double> weighted_input_sum(const Dataset& data, std::span<const double> coef) {
  if (coef.size() != data.n) throw std::invalid_argument("weighted_input_sum: coef size mismatch");
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  std::vector<double> part(static_cast<std::size_t>(reduce_chunks) * d, 0.0);
#pragma omp parallel for schedule(static) if (n * d > 8192)
  for (int c = 0; c < reduce_chunks; ++c) {
    auto [lo, hi] = chunk_range(n, c, reduce_chunks);
    double* acc = part.data() + static_cast<std::size_t>(c) * d;
    for (std::size_t i = lo; i < hi; ++i) {
      const double ci = coef[i];
      if (ci == 0.0) continue;
      const double* x = data.xs.data() + i * d;
      for (std::size_t j = 0; j < d; ++j) acc[j] += ci * x[j];
    }
  }
  std::vector<double> total(d, 0.0);
  for (int c = 0; c < reduce_chunks; ++c) {
    const double* acc = part.data() + static_cast<std::size_t>(c) * d;
    for (std::size_t j = 0; j < d; ++j) total[j] += acc[j];
  }
  return total;
}

}  // namespace nsvm::ops
