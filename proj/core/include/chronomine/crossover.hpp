#pragma once

#include <span>
#include <string>
#include <vector>

#include "chronomine/io.hpp"
#include "chronomine/model.hpp"

namespace chronomine {

/// Case-crossover windows. With t0 the first outcome of a subject, the
/// positive window is [t0 - gap - window, t0 - gap) and the negative window
/// the one of the same length right before it.
struct CrossoverConfig {
  std::string outcome;
  Time gap = 3;
  Time window = 90;

  void validate() const;
};

struct CrossoverResult {
  std::vector<RawSequence> sequences;
  /// Subjects without any outcome event.
  std::vector<std::string> skipped;
};

/// Sids become "<sid>/pos" and "<sid>/neg".
CrossoverResult crossover_split(std::span<const Timeline> timelines,
                                const CrossoverConfig& config);

}  // namespace chronomine
