#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "chronomine/model.hpp"
#include "chronomine/multiset.hpp"
#include "chronomine/occurrence.hpp"
#include "chronomine/rules.hpp"

namespace chronomine {

/// Minimal support, either an absolute count of positive sequences or a
/// fraction of |S+| (rounded up).
class SupportThreshold {
 public:
  static SupportThreshold count(std::size_t n);
  static SupportThreshold fraction(double f);
  /// "42" is a count, "0.05" or "5e-3" a fraction.
  static SupportThreshold parse(std::string_view text);

  /// Resolved count, never below 1.
  std::size_t resolve(std::size_t positives) const;
  bool is_fraction() const { return is_fraction_; }
  double value() const { return value_; }

 private:
  bool is_fraction_ = false;
  double value_ = 1.0;
};

struct DcmConfig {
  SupportThreshold sigma_min = SupportThreshold::count(1);
  double g_min = 2.0;
  std::size_t min_size = 2;
  std::size_t max_size = std::numeric_limits<std::size_t>::max();
  std::size_t occurrence_cap = kDefaultOccurrenceCap;
  std::uint64_t seed = 0;
  /// Constraint-free multisets must beat g_min strictly to short-circuit.
  bool strict_growth = false;
  /// 0 picks the hardware concurrency. CHRONOMINE_THREADS caps either way.
  std::size_t threads = 0;
  RuleLearnerConfig learner{};
  /// Debug hook receiving every duration table handed to the learner.
  /// Calls are serialized.
  std::function<void(const DurationTable&)> table_sink;

  /// Throws std::invalid_argument when thresholds are out of range.
  void validate() const;
};

struct DcmResult {
  std::vector<MinedChronicle> chronicles;
  std::size_t multisets = 0;
  std::size_t unconstrained = 0;
  std::size_t tables_truncated = 0;
  std::vector<std::string> warnings;
};

/// supp(S+) >= g_min * supp(S-) for (ms, T-inf), or > in strict mode.
bool check_multiset_discriminancy(const Multiset& ms,
                                  const SequenceDataset& dataset,
                                  const DcmConfig& config);

/// Discriminant chronicle mining. Frequent multisets of S+ that are already
/// discriminant are emitted without constraints; the others get constraint
/// sets from rule induction on their duration tables, kept only when the
/// sequence-level supports are discriminant. Output is sorted by growth
/// (desc), supp_pos (desc), then chronicle.
///
/// Throws std::invalid_argument on an empty positive set or bad config.
DcmResult dcm(const SequenceDataset& dataset, const DcmConfig& config);

/// Worker count after applying CHRONOMINE_THREADS.
std::size_t worker_count(std::size_t requested);

}  // namespace chronomine
