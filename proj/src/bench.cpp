#include "rtm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rtm/model_io.hpp"

namespace rtm {

double mae(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw std::invalid_argument("mae: " + std::to_string(predictions.size()) +
                                " predictions vs " +
                                std::to_string(targets.size()) + " targets");
  }
  if (predictions.empty()) throw std::invalid_argument("mae: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    acc += std::fabs(predictions[i] - targets[i]);
  }
  return acc / static_cast<double>(predictions.size());
}

std::int64_t ExperimentConfig::effective_resolution() const {
  if (resolution > 0) return resolution;
  return variant == Variant::kPlain ? n_clauses
                                    : static_cast<std::int64_t>(100) * n_clauses;
}

RtmConfig ExperimentConfig::model_config() const {
  RtmConfig cfg;
  cfg.variant = variant;
  cfg.n_clauses = n_clauses;
  cfg.resolution = effective_resolution();
  cfg.specificity = specificity;
  cfg.n_states = n_states;
  cfg.alpha = alpha;
  cfg.random_state_init = random_state_init;
  cfg.empty_clause_zero_at_inference = empty_clause_zero_at_inference;
  cfg.decrement_requires_fire = decrement_requires_fire;
  cfg.additive_real_update = additive_real_update;
  return cfg;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::pair<Dataset, Dataset> load_data(const DataSource& src) {
  if (src.spec) {
    Rng rng(src.spec->seed);
    return generate(*src.spec, rng);
  }
  if (src.train_csv.empty() || src.test_csv.empty()) {
    throw std::invalid_argument(
        "run_experiment: data source needs a spec or both CSV paths");
  }
  Dataset train = read_csv(src.train_csv);
  Dataset test = read_csv(src.test_csv);
  if (train.n_bits != test.n_bits) {
    throw std::invalid_argument("run_experiment: train has " +
                                std::to_string(train.n_bits) +
                                " features, test has " +
                                std::to_string(test.n_bits));
  }
  return {std::move(train), std::move(test)};
}

SeedRun run_one(const ExperimentConfig& cfg, const Dataset& train,
                const Dataset& test, std::uint64_t seed) {
  Rng rng(seed);
  RtmModel model(cfg.model_config(), train.n_bits, train.norm, rng);
  RunReport report = fit(model, train, test, cfg.epochs, rng);
  return SeedRun{seed, std::move(report), std::move(model)};
}

void write_artifacts(const ExperimentConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);

  {
    std::ofstream out(dir / "epoch_metrics.csv", std::ios::binary);
    if (!out) throw std::runtime_error("run_experiment: cannot write epoch_metrics.csv");
    out << "seed,epoch,split,mae\n";
    for (const SeedRun& run : result.runs) {
      for (std::size_t e = 0; e < run.report.train_mae.size(); ++e) {
        out << run.seed << ',' << e << ",train," << fmt(run.report.train_mae[e]) << '\n';
        out << run.seed << ',' << e << ",test," << fmt(run.report.test_mae[e]) << '\n';
      }
    }
  }
  {
    std::ofstream out(dir / "final_summary.csv", std::ios::binary);
    if (!out) throw std::runtime_error("run_experiment: cannot write final_summary.csv");
    out << "seed,train_mae,test_mae,best_train_mae,best_test_mae\n";
    for (const SeedRun& run : result.runs) {
      const double tr = run.report.train_mae.back();
      const double te = run.report.test_mae.back();
      out << run.seed << ',' << fmt(tr) << ',' << fmt(te) << ',' << fmt(tr)
          << ',' << fmt(te) << '\n';
    }
    out << "aggregate," << fmt(result.mean_train_mae) << ','
        << fmt(result.mean_test_mae) << ',' << fmt(result.min_train_mae) << ','
        << fmt(result.min_test_mae) << '\n';
  }

  const RtmModel& best = result.runs[result.best_index].model;
  {
    std::ofstream out(dir / "clauses.txt", std::ios::binary);
    if (!out) throw std::runtime_error("run_experiment: cannot write clauses.txt");
    out << clause_report(best);
  }
  save_model(best, (dir / "model.json").string());
  if (cfg.variant != Variant::kPlain) {
    std::ofstream out(dir / "weights_hist.csv", std::ios::binary);
    if (!out) throw std::runtime_error("run_experiment: cannot write weights_hist.csv");
    write_histogram_csv(weight_histogram(best, cfg.hist_bin_width), out);
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) {
    throw std::invalid_argument("run_experiment: seed list is empty");
  }
  const auto [train, test] = load_data(cfg.data);

  ExperimentResult result;
  if (cfg.parallel_seeds && cfg.seeds.size() > 1) {
    std::vector<std::future<SeedRun>> futures;
    futures.reserve(cfg.seeds.size());
    for (std::uint64_t seed : cfg.seeds) {
      futures.push_back(std::async(std::launch::async, run_one, std::cref(cfg),
                                   std::cref(train), std::cref(test), seed));
    }
    for (auto& f : futures) result.runs.push_back(f.get());
  } else {
    for (std::uint64_t seed : cfg.seeds) {
      result.runs.push_back(run_one(cfg, train, test, seed));
    }
  }

  result.min_train_mae = std::numeric_limits<double>::infinity();
  result.min_test_mae = std::numeric_limits<double>::infinity();
  double best_test = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const double tr = result.runs[i].report.train_mae.back();
    const double te = result.runs[i].report.test_mae.back();
    result.mean_train_mae += tr;
    result.mean_test_mae += te;
    result.min_train_mae = std::min(result.min_train_mae, tr);
    result.min_test_mae = std::min(result.min_test_mae, te);
    if (te < best_test) {
      best_test = te;
      result.best_index = i;
    }
  }
  result.mean_train_mae /= static_cast<double>(result.runs.size());
  result.mean_test_mae /= static_cast<double>(result.runs.size());

  if (!cfg.out_dir.empty()) write_artifacts(cfg, result);
  return result;
}

WeightHistogram weight_histogram(const RtmModel& model, double bin_width) {
  if (model.config().variant == Variant::kPlain) {
    throw std::invalid_argument("weight_histogram: unity-weight variant has no weights");
  }
  if (!(bin_width > 0.0)) {
    throw std::invalid_argument("weight_histogram: bin_width must be > 0");
  }
  WeightHistogram hist;
  hist.bin_width = bin_width;
  for (int j = 0; j < model.n_clauses(); ++j) {
    const double w = model.clause_weight(j);
    if (w == 0.0) {
      ++hist.zero_count;
    } else {
      ++hist.bins[static_cast<std::int64_t>(std::floor(w / bin_width))];
    }
  }
  return hist;
}

void write_histogram_csv(const WeightHistogram& hist, std::ostream& out) {
  char buf[64];
  out << "bin_lo,count\n";
  out << "off," << hist.zero_count << '\n';
  for (const auto& [bin, count] : hist.bins) {
    std::snprintf(buf, sizeof buf, "%.17g",
                  static_cast<double>(bin) * hist.bin_width);
    out << buf << ',' << count << '\n';
  }
}

std::string clause_report(const RtmModel& model) {
  std::ostringstream out;
  const int o = model.n_inputs();
  for (int j = 0; j < model.n_clauses(); ++j) {
    const double w = model.clause_weight(j);
    if (!(w > 0.0)) continue;
    const std::vector<int> include = model.ta().include_set(j);
    if (include.empty()) {
      out << "TRUE";
    } else {
      for (std::size_t i = 0; i < include.size(); ++i) {
        if (i) out << " & ";
        const int k = include[i];
        if (k < o) {
          out << 'x' << (k + 1);
        } else {
          out << "~x" << (k - o + 1);
        }
      }
    }
    out << " -> w=";
    if (model.config().variant == Variant::kRealWeights) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", w);
      out << buf;
    } else {
      out << static_cast<std::int64_t>(w);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rtm
