#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nsvm/types.hpp"

namespace nsvm {

struct SynthConfig {
  std::size_t n = 0;           // >= 1
  std::size_t d = 10;          // >= 1
  std::uint64_t seed = 0;
  double noise_scale = 100.0;  // label flip probability 1/(1+exp(noise_scale*|margin|))
};

// Generation with the internals exposed (for audits of the mechanism).
struct SynthInstance {
  Dataset data;
  std::vector<double> w_y;      // target direction
  std::vector<double> w_v;      // viewpoint direction, first coordinate shared
  std::vector<double> y_clean;  // labels before noise
  std::vector<double> v_clean;
};

SynthInstance gen_synthetic_full(const SynthConfig& cfg);
Dataset gen_synthetic(const SynthConfig& cfg);

struct IngestSchema {
  std::string target_column;
  std::string viewpoint_column;
  std::string positive_target_value;
  std::string positive_viewpoint_value;
  // numeric columns to discretize into equal-frequency bins (one-hot coded);
  // numeric columns not listed pass through as raw values
  std::map<std::string, int> numeric_bins;
};

IngestSchema load_schema(const std::string& path);
void save_schema(const IngestSchema& schema, const std::string& path);

// RFC-4180 CSV with a header row. Categorical columns are one-hot coded;
// numeric columns listed in numeric_bins are equal-frequency binned first.
Dataset ingest_csv(const std::string& path, const IngestSchema& schema);

// Dataset writer with columns x1..xd, y, v (the gen-synth on-disk format).
void write_csv(const Dataset& data, const std::string& path);

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// k disjoint test folds covering all indices, sizes differing by at most one
std::vector<FoldSplit> kfold(std::size_t n, std::size_t k, std::uint64_t shuffle_seed);

}  // namespace nsvm
