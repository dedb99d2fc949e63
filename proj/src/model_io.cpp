#include "rtm/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rtm {

namespace {
constexpr const char* kFormatTag = "rtm-model-v1";
}

void save_model(const RtmModel& model, const std::string& path) {
  const RtmConfig& cfg = model.config();
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["variant"] = variant_name(cfg.variant);
  j["m"] = cfg.n_clauses;
  j["o"] = model.n_inputs();
  j["n_states"] = cfg.n_states;
  j["T"] = cfg.resolution;
  j["s"] = cfg.specificity;
  j["alpha"] = cfg.alpha;
  j["normalizer"] = {{"min", model.normalizer().min},
                     {"max", model.normalizer().max}};
  j["empty_clause_zero_at_inference"] = cfg.empty_clause_zero_at_inference;

  const TaStateMatrix& ta = model.ta();
  std::vector<int> states;
  states.reserve(static_cast<std::size_t>(cfg.n_clauses) * ta.n_literals());
  for (int c = 0; c < cfg.n_clauses; ++c) {
    for (int k = 0; k < ta.n_literals(); ++k) states.push_back(ta.state(c, k));
  }
  j["states"] = states;

  if (cfg.variant == Variant::kIntegerWeights) {
    j["weights"] = model.weights().ints;
  } else if (cfg.variant == Variant::kRealWeights) {
    j["weights"] = model.weights().reals;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("save_model: write to " + path + " failed");
}

RtmModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_model: " + path + ": " + e.what());
  }
  if (j.value("format", "") != kFormatTag) {
    throw std::runtime_error("load_model: " + path + ": not a " +
                             std::string(kFormatTag) + " file");
  }

  RtmConfig cfg;
  cfg.variant = variant_from_name(j.at("variant").get<std::string>());
  cfg.n_clauses = j.at("m").get<int>();
  cfg.n_states = j.at("n_states").get<int>();
  cfg.resolution = j.at("T").get<std::int64_t>();
  cfg.specificity = j.at("s").get<double>();
  cfg.alpha = j.value("alpha", 0.01);
  cfg.empty_clause_zero_at_inference =
      j.value("empty_clause_zero_at_inference", false);
  const int o = j.at("o").get<int>();
  Normalizer norm{j.at("normalizer").at("min").get<double>(),
                  j.at("normalizer").at("max").get<double>()};

  RtmModel model(cfg, o, norm);
  const auto& states = j.at("states");
  if (static_cast<int>(states.size()) != cfg.n_clauses * 2 * o) {
    throw std::runtime_error("load_model: " + path + ": states array has " +
                             std::to_string(states.size()) + " entries, expected " +
                             std::to_string(cfg.n_clauses * 2 * o));
  }
  std::size_t idx = 0;
  for (int c = 0; c < cfg.n_clauses; ++c) {
    for (int k = 0; k < 2 * o; ++k) {
      model.ta().set_state(c, k, states[idx++].get<int>());
    }
  }

  if (cfg.variant == Variant::kIntegerWeights) {
    auto w = j.at("weights").get<std::vector<std::int64_t>>();
    if (static_cast<int>(w.size()) != cfg.n_clauses) {
      throw std::runtime_error("load_model: " + path + ": weight count mismatch");
    }
    model.weights().ints = std::move(w);
  } else if (cfg.variant == Variant::kRealWeights) {
    auto w = j.at("weights").get<std::vector<double>>();
    if (static_cast<int>(w.size()) != cfg.n_clauses) {
      throw std::runtime_error("load_model: " + path + ": weight count mismatch");
    }
    model.weights().reals = std::move(w);
  }
  return model;
}

}  // namespace rtm
