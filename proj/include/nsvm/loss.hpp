#pragma once

#include <span>

#include "nsvm/types.hpp"

namespace nsvm {

inline double hinge(double margin) { return margin < 1.0 ? 1.0 - margin : 0.0; }

double empirical_risk(const Dataset& data, std::span<const double> scores, Norm norm);
double empirical_risk(const LinearModel& model, const Dataset& data, Norm norm = Norm::mean);

// Hard (sign-based) neutrality. c_plus is the fraction of samples whose
// decision sign agrees with the viewpoint label; c_minus = 1 - c_plus and
// value = |c_plus - c_minus|, both written so the pair sums to one exactly.
struct SignNeutrality {
  double value = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
  std::size_t agreements = 0;
};

SignNeutrality sign_neutrality(const Dataset& data, std::span<const double> scores);
SignNeutrality sign_neutrality(const LinearModel& model, const Dataset& data);

// Hinge-relaxed neutrality: c_plus/c_minus are hinge totals against +v/-v,
// c_max is their maximum.
struct RelaxedNeutrality {
  double c_plus = 0.0;
  double c_minus = 0.0;
  double c_max = 0.0;
};

RelaxedNeutrality relaxed_neutrality(const Dataset& data, std::span<const double> scores,
                                     Norm norm);
RelaxedNeutrality relaxed_neutrality(const LinearModel& model, const Dataset& data,
                                     Norm norm = Norm::mean);

// Same, but each hinge value is clipped at cap (used by the deviation bound).
RelaxedNeutrality relaxed_neutrality_clipped(const Dataset& data, std::span<const double> scores,
                                             double cap, Norm norm);

// Training objective: hinge loss total + (lambda/2)||w||^2 + eta * c_max,
// with loss and c_max as plain sums over samples.
double nerm_objective(const Dataset& data, std::span<const double> scores, double w_sq_norm,
                      const Hyperparams& hp);
double nerm_objective(const LinearModel& model, const Dataset& data, const Hyperparams& hp);

}  // namespace nsvm
