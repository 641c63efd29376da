#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chronomine/model.hpp"

namespace chronomine {

/// Labeled sequences made of uniform noise, with one occurrence of a planted
/// chronicle in a fraction of the positives and of the negatives.
///
/// Timestamps are integers. Noise events draw a type from `noise_types` and
/// a time in [0, horizon]; the planted occurrence starts in [0, horizon] and
/// its other items are placed inside the windows allowed by the constraints.
struct SyntheticSpec {
  std::size_t positives = 200;
  std::size_t negatives = 200;
  Chronicle planted;
  double p_pos = 0.8;
  double p_neg = 0.05;
  std::vector<std::string> noise_types;
  std::size_t noise_events = 8;
  Time horizon = 200;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// JSON object with the fields above; "planted" uses the chronicle layout of
/// the result format. Missing fields keep their defaults.
SyntheticSpec parse_synthetic_spec(std::string_view json_text);

/// Deterministic for a given spec and seed. Throws std::invalid_argument
/// when the planted constraints admit no integer assignment.
std::vector<RawSequence> generate_synthetic(const SyntheticSpec& spec,
                                            std::uint64_t seed);

SequenceDataset generate_synthetic_dataset(const SyntheticSpec& spec,
                                           std::uint64_t seed);

/// Tightest integer bounds on t_j - t_i implied by the constraints
/// (all-pairs shortest paths over the distance graph). Empty when the
/// network is inconsistent. Entry [i][j] bounds t_j - t_i from above.
std::vector<std::vector<Time>> minimal_network(const Chronicle& c);

}  // namespace chronomine
