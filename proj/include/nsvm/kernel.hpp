#pragma once

#include <cstdint>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

#include "nsvm/types.hpp"

namespace nsvm {

enum class KernelKind { linear, rbf, polynomial };

struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  double gamma = 1.0;   // rbf: k = exp(-gamma * ||a-b||^2), gamma > 0
  int degree = 3;       // polynomial: k = (a.b + coef0)^degree, degree >= 1
  double coef0 = 0.0;
};

void validate(const KernelSpec& spec);
const char* to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b);

// out[j] = k(x_i, x_j) for all j
void gram_row(const Dataset& data, const KernelSpec& spec, std::size_t i, std::span<double> out);
void gram_row_serial(const Dataset& data, const KernelSpec& spec, std::size_t i,
                     std::span<double> out);

// Row-wise accessor for the 3n x 3n dual matrix Q, where
// Q[I][J] = t[I] * t[J] * k(x_{I mod n}, x_{J mod n}) and t stacks
// (y_1..y_n, v_1..v_n, -v_1..-v_n). Kernel rows are computed lazily and held
// in an LRU cache with a byte budget; diagonal entries are precomputed.
class QMatrix {
 public:
  QMatrix(const Dataset& data, const KernelSpec& spec, std::size_t cache_bytes = 1u << 26);

  std::size_t n() const { return n_; }
  std::size_t size() const { return 3 * n_; }
  const std::vector<double>& t() const { return t_; }
  double diag(std::size_t I) const { return kdiag_[I % n_]; }

  // kernel row for sample i (length n), cached
  std::span<const double> kernel_row(std::size_t i);

  double entry(std::size_t I, std::size_t J) {
    const std::span<const double> row = kernel_row(I % n_);
    return t_[I] * t_[J] * row[J % n_];
  }

  std::size_t rows_cached() const { return cache_.size(); }
  std::size_t row_capacity() const { return capacity_; }

 private:
  const Dataset* data_;  // borrowed; must outlive the matrix
  KernelSpec spec_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<double> kdiag_;
  std::size_t capacity_;  // max cached rows, >= 2

  std::list<std::size_t> order_;  // most recent first
  struct CacheEntry {
    std::vector<double> row;
    std::list<std::size_t>::iterator pos;
  };
  std::unordered_map<std::size_t, CacheEntry> cache_;
};

QMatrix build_q(const Dataset& data, const KernelSpec& spec, std::size_t cache_bytes = 1u << 26);

}  // namespace nsvm
