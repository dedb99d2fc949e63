#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtm/dataset.hpp"
#include "rtm/model.hpp"
#include "rtm/train.hpp"

namespace rtm {

// Mean absolute error in target units. Throws std::invalid_argument on a
// length mismatch or empty input.
double mae(std::span<const double> predictions, std::span<const double> targets);

// Either a generator spec or a pair of CSV paths.
struct DataSource {
  std::optional<DatasetSpec> spec;
  std::string train_csv;
  std::string test_csv;
};

struct ExperimentConfig {
  DataSource data;
  Variant variant = Variant::kIntegerWeights;
  int n_clauses = 3;
  std::int64_t resolution = 0;  // 0: T = m for plain, 100 * m for weighted
  double specificity = 2.0;
  int n_states = 100;
  double alpha = 0.01;
  int epochs = 200;
  std::vector<std::uint64_t> seeds = {42};
  std::string out_dir;  // empty: keep results in memory only
  double hist_bin_width = 1.0;
  bool random_state_init = false;
  bool empty_clause_zero_at_inference = false;
  bool decrement_requires_fire = false;
  bool additive_real_update = false;
  bool parallel_seeds = true;

  std::int64_t effective_resolution() const;
  RtmConfig model_config() const;
};

struct SeedRun {
  std::uint64_t seed;
  RunReport report;
  RtmModel model;
};

struct ExperimentResult {
  std::vector<SeedRun> runs;    // in the order of cfg.seeds
  std::size_t best_index = 0;   // lowest final test MAE
  double mean_train_mae = 0.0;
  double mean_test_mae = 0.0;
  double min_train_mae = 0.0;
  double min_test_mae = 0.0;
};

// Trains one model per seed on the configured data and aggregates the final
// errors. With a non-empty out_dir also writes epoch_metrics.csv,
// final_summary.csv, clauses.txt, model.json and (for weighted variants)
// weights_hist.csv. Deterministic for a fixed config and seed list.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct WeightHistogram {
  double bin_width = 1.0;
  std::int64_t zero_count = 0;              // clauses with weight exactly 0
  std::map<std::int64_t, std::int64_t> bins;  // floor(w / width) -> count, w > 0
};

// Throws std::invalid_argument for the unity-weight variant.
WeightHistogram weight_histogram(const RtmModel& model, double bin_width);

// One line per clause with positive weight: included literals and weight.
std::string clause_report(const RtmModel& model);

void write_histogram_csv(const WeightHistogram& hist, std::ostream& out);

}  // namespace rtm
