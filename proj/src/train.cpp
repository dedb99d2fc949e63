#include "rtm/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>

namespace rtm {

namespace {

struct StepScratch {
  std::vector<Bit> clause_out;
  std::vector<int> activated;
  std::vector<Bit> activation;
  FeedbackSets fb;
};

FeedbackType step_impl(RtmModel& model, const PackedLiterals& lits,
                       double target_norm, Rng& rng, StepScratch& s,
                       double* vote_sum_out = nullptr) {
  const RtmConfig& cfg = model.config();
  const double votes = model.predict_raw(lits, s.clause_out);
  if (vote_sum_out) *vote_sum_out = votes;
  const double y_norm =
      std::clamp(votes / static_cast<double>(cfg.resolution), 0.0, 1.0);
  const FeedbackType type = feedback_type(y_norm, target_norm);
  s.activated.clear();
  if (type == FeedbackType::kNone) return type;

  const double p = std::clamp(std::fabs(y_norm - target_norm), 0.0, 1.0);
  sample_bernoulli_indices(cfg.n_clauses, p, rng, s.activated);
  s.activation.assign(cfg.n_clauses, 0);
  for (int j : s.activated) s.activation[j] = 1;

  s.fb.clear();
  if (type == FeedbackType::kTypeI) {
    detail::select_type_ia_into(s.clause_out, s.activated, lits, s.fb.ia);
    detail::select_type_ib_into(s.clause_out, s.activated, lits,
                                cfg.specificity, rng, s.fb.ib);
  } else {
    detail::select_type_ii_into(s.clause_out, s.activated, lits, s.fb.ii);
  }
  model.ta().apply_feedback(s.fb);

  switch (cfg.variant) {
    case Variant::kIntegerWeights:
      update_weights_integer(model.weights(), y_norm, target_norm,
                             s.clause_out, s.activation,
                             cfg.decrement_requires_fire);
      break;
    case Variant::kRealWeights:
      update_weights_real(model.weights(), y_norm, target_norm, s.clause_out,
                          s.activation, cfg.alpha, cfg.additive_real_update,
                          cfg.decrement_requires_fire);
      break;
    case Variant::kPlain:
      break;
  }
  return type;
}

int input_key(const BitVector& x) {
  int key = 0;
  for (Bit b : x) key = 2 * key + b;
  return key;
}

// Binary inputs with few bits repeat heavily, so predictions are computed
// once per distinct input per evaluation pass.
double mae_with_keys(const RtmModel& model, const Dataset& ds,
                     std::span<const int> keys) {
  std::vector<double> pred(std::size_t{1} << ds.n_bits,
                           std::numeric_limits<double>::quiet_NaN());
  double acc = 0.0;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    double& p = pred[keys[i]];
    if (std::isnan(p)) p = model.predict(ds.samples[i].x);
    acc += std::fabs(p - ds.samples[i].target);
  }
  return acc / static_cast<double>(ds.samples.size());
}

std::vector<int> input_keys(const Dataset& ds) {
  std::vector<int> keys(ds.samples.size());
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    keys[i] = input_key(ds.samples[i].x);
  }
  return keys;
}

void check_dataset(const RtmModel& model, const Dataset& ds, const char* name) {
  if (ds.samples.empty()) {
    throw std::invalid_argument(std::string("fit: ") + name + " dataset is empty");
  }
  if (ds.n_bits != model.n_inputs()) {
    throw std::invalid_argument(std::string("fit: ") + name + " dataset has " +
                                std::to_string(ds.n_bits) +
                                " features, model expects " +
                                std::to_string(model.n_inputs()));
  }
  if (!(ds.norm == model.normalizer())) {
    throw std::invalid_argument(std::string("fit: ") + name +
                                " dataset normalizer differs from the model's");
  }
}

}  // namespace

StepTrace train_step(RtmModel& model, const BitVector& x, double target_norm,
                     Rng& rng) {
  if (static_cast<int>(x.size()) != model.n_inputs()) {
    throw std::invalid_argument("train_step: input width mismatch");
  }
  if (target_norm < 0.0 || target_norm > 1.0) {
    throw std::invalid_argument("train_step: target must be normalized to [0, 1]");
  }
  StepScratch s;
  StepTrace trace;
  const PackedLiterals lits = pack_input(x);
  trace.feedback = step_impl(model, lits, target_norm, rng, s, &trace.vote_sum);
  trace.clause_outputs = std::move(s.clause_out);
  if (s.activation.empty()) s.activation.assign(model.n_clauses(), 0);
  trace.activation = std::move(s.activation);
  return trace;
}

double evaluate_mae(const RtmModel& model, const Dataset& ds) {
  if (ds.samples.empty()) {
    throw std::invalid_argument("evaluate_mae: empty dataset");
  }
  if (ds.n_bits != model.n_inputs()) {
    throw std::invalid_argument("evaluate_mae: dataset has " +
                                std::to_string(ds.n_bits) +
                                " features, model expects " +
                                std::to_string(model.n_inputs()));
  }
  if (ds.n_bits <= 12) return mae_with_keys(model, ds, input_keys(ds));
  double acc = 0.0;
  for (const auto& s : ds.samples) acc += std::fabs(model.predict(s.x) - s.target);
  return acc / static_cast<double>(ds.samples.size());
}

RunReport fit(RtmModel& model, const Dataset& train, const Dataset& test,
              int epochs, Rng& rng) {
  check_dataset(model, train, "train");
  check_dataset(model, test, "test");
  if (epochs < 0) throw std::invalid_argument("fit: epochs must be >= 0");
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = train.samples.size();
  std::vector<PackedLiterals> packed(n);
  std::vector<double> target_norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    packed[i] = pack_input(train.samples[i].x);
    target_norm[i] = model.normalizer().normalize(train.samples[i].target);
  }
  const bool small_domain = train.n_bits <= 12;
  const std::vector<int> train_keys = small_domain ? input_keys(train) : std::vector<int>{};
  const std::vector<int> test_keys = small_domain ? input_keys(test) : std::vector<int>{};

  RunReport report;
  auto record = [&] {
    report.train_mae.push_back(small_domain ? mae_with_keys(model, train, train_keys)
                                            : evaluate_mae(model, train));
    report.test_mae.push_back(small_domain ? mae_with_keys(model, test, test_keys)
                                           : evaluate_mae(model, test));
  };
  record();  // epoch 0, untrained

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  StepScratch scratch;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t i : order) {
      step_impl(model, packed[i], target_norm[i], rng, scratch);
    }
    record();
  }

  for (int j = 0; j < model.n_clauses(); ++j) {
    report.final_weights.push_back(model.clause_weight(j));
    report.final_include_sets.push_back(model.ta().include_set(j));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void write_epoch_csv(const RunReport& report, std::ostream& out) {
  out << "epoch,split,mae\n";
  char buf[64];
  for (std::size_t e = 0; e < report.train_mae.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%.17g", report.train_mae[e]);
    out << e << ",train," << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", report.test_mae[e]);
    out << e << ",test," << buf << '\n';
  }
}

}  // namespace rtm
