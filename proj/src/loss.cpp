#include "nsvm/loss.hpp"

#include "nsvm/ops.hpp"

namespace nsvm {

namespace {

std::vector<double> scores_of(const LinearModel& model, const Dataset& data) {
  check_dims(model, data);
  std::vector<double> s(data.n);
  ops::decision_values(data, model.w, model.b, s);
  return s;
}

void check_nonempty(const Dataset& data, Norm norm) {
  if (norm == Norm::mean && data.n == 0)
    throw std::invalid_argument("mean over an empty dataset");
}

}  // namespace

double empirical_risk(const Dataset& data, std::span<const double> scores, Norm norm) {
  check_nonempty(data, norm);
  const double total = ops::margin_sums(data, scores).loss;
  return norm == Norm::mean ? total / static_cast<double>(data.n) : total;
}

double empirical_risk(const LinearModel& model, const Dataset& data, Norm norm) {
  return empirical_risk(data, scores_of(model, data), norm);
}

SignNeutrality sign_neutrality(const Dataset& data, std::span<const double> scores) {
  if (data.n == 0) throw std::invalid_argument("sign_neutrality: empty dataset");
  SignNeutrality out;
  out.agreements = ops::agree_count(data, scores);
  out.c_plus = static_cast<double>(out.agreements) / static_cast<double>(data.n);
  // exact complement/difference: c_plus is representable in [0,1], so
  // 1 - c_plus and 2*c_plus - 1 incur no rounding
  out.c_minus = 1.0 - out.c_plus;
  out.value = out.c_plus >= 0.5 ? 2.0 * out.c_plus - 1.0 : 1.0 - 2.0 * out.c_plus;
  return out;
}

SignNeutrality sign_neutrality(const LinearModel& model, const Dataset& data) {
  return sign_neutrality(data, scores_of(model, data));
}

RelaxedNeutrality relaxed_neutrality(const Dataset& data, std::span<const double> scores,
                                     Norm norm) {
  check_nonempty(data, norm);
  const auto sums = ops::margin_sums(data, scores);
  RelaxedNeutrality out;
  const double scale = norm == Norm::mean ? 1.0 / static_cast<double>(data.n) : 1.0;
  out.c_plus = sums.c_plus * scale;
  out.c_minus = sums.c_minus * scale;
  out.c_max = out.c_plus > out.c_minus ? out.c_plus : out.c_minus;
  return out;
}

RelaxedNeutrality relaxed_neutrality(const LinearModel& model, const Dataset& data, Norm norm) {
  return relaxed_neutrality(data, scores_of(model, data), norm);
}

RelaxedNeutrality relaxed_neutrality_clipped(const Dataset& data, std::span<const double> scores,
                                             double cap, Norm norm) {
  check_nonempty(data, norm);
  if (!(cap >= 0.0)) throw std::invalid_argument("relaxed_neutrality_clipped: cap must be >= 0");
  if (scores.size() != data.n)
    throw std::invalid_argument("scores size does not match dataset");
  RelaxedNeutrality out;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double hp = hinge(data.vs[i] * scores[i]);
    const double hm = hinge(-data.vs[i] * scores[i]);
    out.c_plus += hp < cap ? hp : cap;
    out.c_minus += hm < cap ? hm : cap;
  }
  if (norm == Norm::mean) {
    out.c_plus /= static_cast<double>(data.n);
    out.c_minus /= static_cast<double>(data.n);
  }
  out.c_max = out.c_plus > out.c_minus ? out.c_plus : out.c_minus;
  return out;
}

double nerm_objective(const Dataset& data, std::span<const double> scores, double w_sq_norm,
                      const Hyperparams& hp) {
  validate(hp);
  const auto sums = ops::margin_sums(data, scores);
  const double c_max = sums.c_plus > sums.c_minus ? sums.c_plus : sums.c_minus;
  return sums.loss + 0.5 * hp.lambda * w_sq_norm + hp.eta * c_max;
}

double nerm_objective(const LinearModel& model, const Dataset& data, const Hyperparams& hp) {
  check_dims(model, data);
  return nerm_objective(data, scores_of(model, data), ops::dot(model.w, model.w), hp);
}

}  // namespace nsvm
