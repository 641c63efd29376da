#include "chronomine/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chronomine {

void CrossoverConfig::validate() const {
  if (outcome.empty()) throw std::invalid_argument("outcome event is required");
  if (!(gap >= 0) || !std::isfinite(gap)) {
    throw std::invalid_argument("gap must be >= 0");
  }
  if (!(window > 0) || !std::isfinite(window)) {
    throw std::invalid_argument("window length must be > 0");
  }
}

CrossoverResult crossover_split(std::span<const Timeline> timelines,
                                const CrossoverConfig& config) {
  config.validate();
  CrossoverResult out;
  for (const auto& timeline : timelines) {
    Time t0 = kInf;
    for (const auto& e : timeline.events) {
      if (e.type == config.outcome) t0 = std::min(t0, e.timestamp);
    }
    if (t0 == kInf) {
      out.skipped.push_back(timeline.sid);
      continue;
    }
    const Time pos_end = t0 - config.gap;
    const Time pos_begin = pos_end - config.window;
    const Time neg_begin = pos_begin - config.window;

    RawSequence pos{timeline.sid + "/pos", Label::Positive, {}};
    RawSequence neg{timeline.sid + "/neg", Label::Negative, {}};
    for (const auto& e : timeline.events) {
      if (e.timestamp >= pos_begin && e.timestamp < pos_end) {
        pos.events.push_back(e);
      } else if (e.timestamp >= neg_begin && e.timestamp < pos_begin) {
        neg.events.push_back(e);
      }
    }
    out.sequences.push_back(std::move(pos));
    out.sequences.push_back(std::move(neg));
  }
  return out;
}

}  // namespace chronomine
