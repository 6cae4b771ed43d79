#include "nsvm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "nsvm/ops.hpp"
#include "nsvm/rng.hpp"
#include "nsvm/text.hpp"

namespace nsvm {

namespace {

void validate(const SynthConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("SynthConfig: n must be >= 1");
  if (cfg.d < 1) throw std::invalid_argument("SynthConfig: d must be >= 1");
  if (!(cfg.noise_scale >= 0.0) || !std::isfinite(cfg.noise_scale))
    throw std::invalid_argument("SynthConfig: noise_scale must be nonnegative");
}

// round to nine significant digits, so the CSV writer is lossless
double round_sig9(double x) {
  const std::string s = format_sig9(x);
  return std::strtod(s.c_str(), nullptr);
}

double sgn(double z) { return z >= 0.0 ? 1.0 : -1.0; }  // sgn(0) := +1

}  // namespace

SynthInstance gen_synthetic_full(const SynthConfig& cfg) {
  validate(cfg);
  SynthInstance inst;
  const std::size_t n = cfg.n;
  const std::size_t d = cfg.d;

  inst.w_y.resize(d);
  {
    SplitMix64 g(derive_seed(cfg.seed, 1));
    for (std::size_t j = 0; j < d; ++j) inst.w_y[j] = g.uniform_pm1();
  }
  inst.w_v.resize(d);
  {
    SplitMix64 g(derive_seed(cfg.seed, 2));
    inst.w_v[0] = inst.w_y[0];  // shared first coordinate couples the two channels
    for (std::size_t j = 1; j < d; ++j) inst.w_v[j] = g.uniform_pm1();
  }

  inst.data.d = d;
  inst.data.n = n;
  inst.data.xs.resize(n * d);
  inst.data.ys.resize(n);
  inst.data.vs.resize(n);
  inst.y_clean.resize(n);
  inst.v_clean.resize(n);

  const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (count * static_cast<std::int64_t>(d) > 4096)
  for (std::int64_t ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    SplitMix64 g(derive_seed(cfg.seed, 16 + i));
    double* x = inst.data.xs.data() + i * d;
    // features materialized at nine significant digits: the on-disk form
    // equals the in-memory form exactly
    for (std::size_t j = 0; j < d; ++j) x[j] = round_sig9(g.uniform_pm1());

    double zy = 0.0, zv = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      zy += inst.w_y[j] * x[j];
      zv += inst.w_v[j] * x[j];
    }
    inst.y_clean[i] = sgn(zy);
    inst.v_clean[i] = sgn(zv);
    // flip probability decays with distance from the decision plane
    const double py = 1.0 / (1.0 + std::exp(cfg.noise_scale * std::fabs(zy)));
    const double pv = 1.0 / (1.0 + std::exp(cfg.noise_scale * std::fabs(zv)));
    inst.data.ys[i] = g.uniform01() < py ? -inst.y_clean[i] : inst.y_clean[i];
    inst.data.vs[i] = g.uniform01() < pv ? -inst.v_clean[i] : inst.v_clean[i];
  }
  return inst;
}

Dataset gen_synthetic(const SynthConfig& cfg) { return gen_synthetic_full(cfg).data; }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// RFC-4180 state machine; rows of fields, header included
std::vector<std::vector<std::string>> parse_csv(const std::string& text, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  enum { kStart, kPlain, kQuoted, kQuoteEnd } st = kStart;
  std::size_t line = 1;

  auto end_field = [&]() {
    row.push_back(field);
    field.clear();
    st = kStart;
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(row);
    row.clear();
    ++line;
  };

  for (std::size_t p = 0; p < text.size(); ++p) {
    const char c = text[p];
    switch (st) {
      case kStart:
        if (c == '"') st = kQuoted;
        else if (c == ',') end_field();
        else if (c == '\n') end_row();
        else if (c == '\r') { if (p + 1 < text.size() && text[p + 1] == '\n') ++p; end_row(); }
        else { field.push_back(c); st = kPlain; }
        break;
      case kPlain:
        if (c == '"')
          throw std::runtime_error(path + ":" + std::to_string(line) +
                                   ": unexpected quote inside unquoted field");
        else if (c == ',') end_field();
        else if (c == '\n') end_row();
        else if (c == '\r') { if (p + 1 < text.size() && text[p + 1] == '\n') ++p; end_row(); }
        else field.push_back(c);
        break;
      case kQuoted:
        if (c == '"') st = kQuoteEnd;
        else { field.push_back(c); if (c == '\n') ++line; }
        break;
      case kQuoteEnd:
        if (c == '"') { field.push_back('"'); st = kQuoted; }
        else if (c == ',') end_field();
        else if (c == '\n') end_row();
        else if (c == '\r') { if (p + 1 < text.size() && text[p + 1] == '\n') ++p; end_row(); }
        else
          throw std::runtime_error(path + ":" + std::to_string(line) +
                                   ": unexpected character after closing quote");
        break;
    }
  }
  if (st == kQuoted)
    throw std::runtime_error(path + ":" + std::to_string(line) + ": unterminated quoted field");
  if (st != kStart || !field.empty() || !row.empty()) end_row();
  return rows;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

std::string locate(const std::string& path, std::size_t row, const std::string& col) {
  return path + ": row " + std::to_string(row) + ", column '" + col + "'";
}

}  // namespace

IngestSchema load_schema(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("schema " + path + ": " + e.what());
  }
  IngestSchema s;
  try {
    s.target_column = j.at("target_column").get<std::string>();
    s.viewpoint_column = j.at("viewpoint_column").get<std::string>();
    s.positive_target_value = j.at("positive_target_value").get<std::string>();
    s.positive_viewpoint_value = j.at("positive_viewpoint_value").get<std::string>();
    if (j.contains("numeric_bins"))
      for (auto it = j["numeric_bins"].begin(); it != j["numeric_bins"].end(); ++it)
        s.numeric_bins[it.key()] = it.value().get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("schema " + path + ": " + e.what());
  }
  if (s.target_column == s.viewpoint_column)
    throw std::runtime_error("schema " + path + ": target and viewpoint columns must differ");
  for (const auto& [col, bins] : s.numeric_bins)
    if (bins < 1)
      throw std::runtime_error("schema " + path + ": bin count for '" + col + "' must be >= 1");
  return s;
}

void save_schema(const IngestSchema& schema, const std::string& path) {
  nlohmann::json j;
  j["target_column"] = schema.target_column;
  j["viewpoint_column"] = schema.viewpoint_column;
  j["positive_target_value"] = schema.positive_target_value;
  j["positive_viewpoint_value"] = schema.positive_viewpoint_value;
  j["numeric_bins"] = nlohmann::json::object();
  for (const auto& [col, bins] : schema.numeric_bins) j["numeric_bins"][col] = bins;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

Dataset ingest_csv(const std::string& path, const IngestSchema& schema) {
  if (schema.target_column == schema.viewpoint_column)
    throw std::invalid_argument("IngestSchema: target and viewpoint columns must differ");
  const std::string text = read_file(path);
  const auto rows = parse_csv(text, path);
  if (rows.empty()) throw std::runtime_error(path + ": empty file");
  const auto& header = rows[0];
  if (rows.size() < 2) throw std::runtime_error(path + ": no data rows");

  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r].size() != header.size())
      throw std::runtime_error(path + ": row " + std::to_string(r + 1) + " has " +
                               std::to_string(rows[r].size()) + " fields, expected " +
                               std::to_string(header.size()));

  auto column_of = [&](const std::string& name) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return c;
    throw std::runtime_error(path + ": missing column '" + name + "'");
  };
  const std::size_t target_col = column_of(schema.target_column);
  const std::size_t viewpoint_col = column_of(schema.viewpoint_column);

  const std::size_t n = rows.size() - 1;

  struct Feature {
    std::size_t col;
    enum { kRaw, kBinned, kCategorical } kind;
    std::size_t width;
    std::vector<std::size_t> hot;     // one-hot index per row (binned/categorical)
    std::vector<double> raw;          // raw numeric values
  };
  std::vector<Feature> features;

  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == target_col || c == viewpoint_col) continue;
    Feature feat;
    feat.col = c;

    std::vector<double> numeric(n);
    bool all_numeric = true;
    for (std::size_t r = 0; r < n; ++r)
      if (!parse_double(rows[r + 1][c], numeric[r])) {
        all_numeric = false;
        break;
      }

    const auto bin_it = schema.numeric_bins.find(header[c]);
    if (bin_it != schema.numeric_bins.end()) {
      if (!all_numeric) {
        // name the first offending row for the error
        for (std::size_t r = 0; r < n; ++r) {
          double tmp;
          if (!parse_double(rows[r + 1][c], tmp))
            throw std::runtime_error(locate(path, r + 2, header[c]) +
                                     ": not numeric but listed in numeric_bins");
        }
      }
      const std::size_t bins = static_cast<std::size_t>(bin_it->second);
      // equal-frequency binning by rank; ties split by row order so
      // occupancies differ by at most one
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return numeric[a] < numeric[b];
      });
      feat.kind = Feature::kBinned;
      feat.width = bins;
      feat.hot.resize(n);
      for (std::size_t rank = 0; rank < n; ++rank)
        feat.hot[order[rank]] = rank * bins / n;
    } else if (all_numeric) {
      feat.kind = Feature::kRaw;
      feat.width = 1;
      feat.raw = std::move(numeric);
    } else {
      feat.kind = Feature::kCategorical;
      feat.hot.resize(n);
      std::vector<std::string> levels;  // order of first appearance
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& cell = rows[r + 1][c];
        std::size_t idx = levels.size();
        for (std::size_t l = 0; l < levels.size(); ++l)
          if (levels[l] == cell) {
            idx = l;
            break;
          }
        if (idx == levels.size()) levels.push_back(cell);
        feat.hot[r] = idx;
      }
      feat.width = levels.size();
    }
    features.push_back(std::move(feat));
  }

  std::size_t d = 0;
  for (const Feature& f : features) d += f.width;
  if (d == 0) throw std::runtime_error(path + ": no feature columns");

  auto map_label = [&](const std::string& cell, const std::string& positive, std::size_t r,
                       std::size_t c) {
    if (cell.empty())
      throw std::runtime_error(locate(path, r + 2, header[c]) + ": empty label value");
    return cell == positive ? 1.0 : -1.0;
  };

  Dataset out;
  out.d = d;
  out.reserve(n);
  std::vector<double> x(d);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(x.begin(), x.end(), 0.0);
    std::size_t off = 0;
    for (const Feature& f : features) {
      if (f.kind == Feature::kRaw)
        x[off] = f.raw[r];
      else
        x[off + f.hot[r]] = 1.0;
      off += f.width;
    }
    const double y = map_label(rows[r + 1][target_col], schema.positive_target_value, r, target_col);
    const double v =
        map_label(rows[r + 1][viewpoint_col], schema.positive_viewpoint_value, r, viewpoint_col);
    out.add(x, y, v);
  }
  return out;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (std::size_t j = 0; j < data.d; ++j) out << "x" << (j + 1) << ",";
  out << "y,v\n";
  for (std::size_t i = 0; i < data.n; ++i) {
    const auto x = data.input(i);
    for (std::size_t j = 0; j < data.d; ++j) out << format_sig9(x[j]) << ",";
    out << format_sig9(data.ys[i]) << "," << format_sig9(data.vs[i]) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<FoldSplit> kfold(std::size_t n, std::size_t k, std::uint64_t shuffle_seed) {
  if (k < 2) throw std::invalid_argument("kfold: k must be >= 2");
  if (k > n) throw std::invalid_argument("kfold: k = " + std::to_string(k) +
                                         " exceeds n = " + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 g(derive_seed(shuffle_seed, 0));
  shuffle(std::span<std::size_t>(order), g);

  std::vector<FoldSplit> splits(k);
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t lo = n * f / k;
    const std::size_t hi = n * (f + 1) / k;
    auto& split = splits[f];
    split.test.assign(order.begin() + lo, order.begin() + hi);
    split.train.reserve(n - (hi - lo));
    split.train.insert(split.train.end(), order.begin(), order.begin() + lo);
    split.train.insert(split.train.end(), order.begin() + hi, order.end());
  }
  return splits;
}

}  // namespace nsvm
