#pragma once

#include <string>

#include "rtm/model.hpp"

namespace rtm {

// JSON model file: header (m, o, N, T, s, variant, alpha, normalizer),
// automaton states row-major, clause weights (absent for unity weights).
void save_model(const RtmModel& model, const std::string& path);
RtmModel load_model(const std::string& path);

}  // namespace rtm
