#include "nsvm/types.hpp"

namespace nsvm {

void Dataset::add(std::span<const double> x, double y, double v) {
  if (d == 0) {
    if (x.empty()) throw std::invalid_argument("Dataset::add: dimension must be >= 1");
    d = x.size();
  }
  if (x.size() != d)
    throw std::invalid_argument("Dataset::add: input has " + std::to_string(x.size()) +
                                " features, expected " + std::to_string(d));
  for (double xi : x)
    if (!std::isfinite(xi)) throw std::invalid_argument("Dataset::add: non-finite feature value");
  if (y != 1.0 && y != -1.0)
    throw std::invalid_argument("Dataset::add: target label must be -1 or +1");
  if (v != 1.0 && v != -1.0)
    throw std::invalid_argument("Dataset::add: viewpoint label must be -1 or +1");
  xs.insert(xs.end(), x.begin(), x.end());
  ys.push_back(y);
  vs.push_back(v);
  ++n;
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.d = data.d;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= data.n) throw std::out_of_range("subset: index " + std::to_string(i) + " >= n");
    out.add(data.input(i), data.ys[i], data.vs[i]);
  }
  return out;
}

}  // namespace nsvm
