#pragma once

#include <iosfwd>
#include <vector>

#include "rtm/dataset.hpp"
#include "rtm/feedback.hpp"
#include "rtm/model.hpp"

namespace rtm {

// Diagnostics from one online update.
struct StepTrace {
  FeedbackType feedback = FeedbackType::kNone;
  double vote_sum = 0.0;
  std::vector<Bit> clause_outputs;
  std::vector<Bit> activation;
};

// One online update from a single example; `target_norm` must already be in
// [0, 1]. Computes the prediction, dispatches Type I/II feedback to the
// automata team and applies the variant's weight update, all from the same
// pre-step prediction and activation mask.
StepTrace train_step(RtmModel& model, const BitVector& x, double target_norm,
                     Rng& rng);

struct RunReport {
  // Index = epoch; entry 0 is the untrained model, so size() == epochs + 1.
  std::vector<double> train_mae;  // target units
  std::vector<double> test_mae;
  std::vector<double> final_weights;
  std::vector<std::vector<int>> final_include_sets;
  double wall_seconds = 0.0;
};

// Runs `epochs` passes over `train` in a seeded shuffled order, recording
// train/test MAE after every epoch. Both datasets must share the model's
// normalizer. Throws std::invalid_argument on an empty dataset.
RunReport fit(RtmModel& model, const Dataset& train, const Dataset& test,
              int epochs, Rng& rng);

// Mean absolute error of the model over the dataset, in target units.
double evaluate_mae(const RtmModel& model, const Dataset& ds);

// Rows `epoch,split,mae` with split in {train, test}.
void write_epoch_csv(const RunReport& report, std::ostream& out);

}  // namespace rtm
