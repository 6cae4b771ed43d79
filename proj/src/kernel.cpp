#include "nsvm/kernel.hpp"

#include <cmath>

#include "nsvm/ops.hpp"

namespace nsvm {

void validate(const KernelSpec& spec) {
  switch (spec.kind) {
    case KernelKind::linear:
      return;
    case KernelKind::rbf:
      if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma))
        throw std::invalid_argument("KernelSpec: rbf gamma must be positive");
      return;
    case KernelKind::polynomial:
      if (spec.degree < 1) throw std::invalid_argument("KernelSpec: degree must be >= 1");
      if (!std::isfinite(spec.coef0)) throw std::invalid_argument("KernelSpec: coef0 must be finite");
      return;
  }
  throw std::invalid_argument("KernelSpec: unknown kind");
}

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::linear: return "linear";
    case KernelKind::rbf: return "rbf";
    case KernelKind::polynomial: return "poly";
  }
  return "?";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "rbf") return KernelKind::rbf;
  if (name == "poly" || name == "polynomial") return KernelKind::polynomial;
  throw std::invalid_argument("unknown kernel: " + name);
}

namespace {

double poly_pow(double base, int degree) {
  double r = 1.0;
  for (int k = 0; k < degree; ++k) r *= base;
  return r;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("kernel_eval: dimension mismatch");
  switch (spec.kind) {
    case KernelKind::linear:
      return ops::dot(a, b);
    case KernelKind::rbf: {
      double sq = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double dj = a[j] - b[j];
        sq += dj * dj;
      }
      return std::exp(-spec.gamma * sq);
    }
    case KernelKind::polynomial:
      return poly_pow(ops::dot(a, b) + spec.coef0, spec.degree);
  }
  throw std::invalid_argument("kernel_eval: unknown kind");
}

void gram_row_serial(const Dataset& data, const KernelSpec& spec, std::size_t i,
                     std::span<double> out) {
  if (i >= data.n) throw std::out_of_range("gram_row: sample index out of range");
  if (out.size() != data.n) throw std::invalid_argument("gram_row: output size mismatch");
  const auto xi = data.input(i);
  for (std::size_t j = 0; j < data.n; ++j) out[j] = kernel_eval(spec, xi, data.input(j));
}

void gram_row(const Dataset& data, const KernelSpec& spec, std::size_t i, std::span<double> out) {
  if (i >= data.n) throw std::out_of_range("gram_row: sample index out of range");
  if (out.size() != data.n) throw std::invalid_argument("gram_row: output size mismatch");
  const auto xi = data.input(i);
  const std::int64_t n = static_cast<std::int64_t>(data.n);
#pragma omp parallel for schedule(static) if (n * static_cast<std::int64_t>(data.d) > 4096)
  for (std::int64_t j = 0; j < n; ++j)
    out[j] = kernel_eval(spec, xi, data.input(static_cast<std::size_t>(j)));
}

QMatrix::QMatrix(const Dataset& data, const KernelSpec& spec, std::size_t cache_bytes)
    : data_(&data), spec_(spec), n_(data.n) {
  validate(spec_);
  if (n_ == 0) throw std::invalid_argument("QMatrix: empty dataset");
  t_.resize(3 * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    t_[i] = data.ys[i];
    t_[n_ + i] = data.vs[i];
    t_[2 * n_ + i] = -data.vs[i];
  }
  kdiag_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
    kdiag_[i] = kernel_eval(spec_, data.input(i), data.input(i));
  const std::size_t row_bytes = n_ * sizeof(double);
  capacity_ = cache_bytes / (row_bytes > 0 ? row_bytes : 1);
  if (capacity_ < 2) capacity_ = 2;
  if (capacity_ > n_) capacity_ = n_;
}

std::span<const double> QMatrix::kernel_row(std::size_t i) {
  i %= n_;
  auto it = cache_.find(i);
  if (it != cache_.end()) {
    order_.splice(order_.begin(), order_, it->second.pos);
    return it->second.row;
  }
  if (cache_.size() >= capacity_) {
    const std::size_t victim = order_.back();
    order_.pop_back();
    cache_.erase(victim);
  }
  CacheEntry entry;
  entry.row.resize(n_);
  gram_row(*data_, spec_, i, entry.row);
  order_.push_front(i);
  entry.pos = order_.begin();
  auto [ins, ok] = cache_.emplace(i, std::move(entry));
  return ins->second.row;
}

QMatrix build_q(const Dataset& data, const KernelSpec& spec, std::size_t cache_bytes) {
  return QMatrix(data, spec, cache_bytes);
}

}  // namespace nsvm
