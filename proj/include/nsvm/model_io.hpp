#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nsvm/eval.hpp"
#include "nsvm/kernel.hpp"
#include "nsvm/smo.hpp"
#include "nsvm/theory.hpp"
#include "nsvm/types.hpp"

namespace nsvm {

nlohmann::json to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolveReport& report);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const SweepResult& result);

// Model files: JSON with "format": "nsvm-model" and "type": "linear"|"kernel".
nlohmann::json model_to_json(const LinearModel& model, const Hyperparams& hp);
nlohmann::json model_to_json(const KernelModel& model, const Hyperparams& hp);

struct LoadedModel {
  std::optional<LinearModel> linear;
  std::optional<KernelModel> kernel;
  Hyperparams hp;
  nlohmann::json meta;  // the full document, for config echoes

  double decision(std::span<const double> x) const;
  std::size_t dim() const;
};

LoadedModel model_from_json(const nlohmann::json& j, const std::string& context);
LoadedModel load_model(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace nsvm
