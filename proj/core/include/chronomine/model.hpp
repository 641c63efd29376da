#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chronomine {

/// Timestamps and durations. Bounds may be +/- infinity.
using Time = double;

inline constexpr Time kInf = std::numeric_limits<Time>::infinity();

enum class Label : std::uint8_t { Positive, Negative };

char label_symbol(Label label);

/// Dense id of an event type inside an Alphabet. Ids follow the order of the
/// type names, so comparing ids compares types.
using EventId = std::uint32_t;

/// Ordered set of event type names (lexicographic byte order).
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::optional<EventId> find(std::string_view name) const;
  const std::string& name(EventId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

struct Event {
  EventId type;
  Time timestamp;
};

/// Event before alphabet resolution, as read from input.
struct RawEvent {
  std::string type;
  Time timestamp;
};

/// A labeled sequence of instantaneous events, sorted by timestamp then type.
///
/// Besides the events, a sequence keeps a per-type index of event positions
/// so the matcher can fetch candidates of one type in time order.
class Sequence {
 public:
  Sequence(std::string sid, Label label, std::vector<RawEvent> events,
           std::shared_ptr<const Alphabet> alphabet);

  const std::string& sid() const { return sid_; }
  Label label() const { return label_; }
  std::span<const Event> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  const Alphabet& alphabet() const { return *alphabet_; }
  const std::string& type_name(std::size_t position) const {
    return alphabet_->name(events_[position].type);
  }

  /// Positions (ascending, hence time ordered) of every event of `type`.
  std::span<const std::uint32_t> positions_of(EventId type) const;
  std::size_t count_of(EventId type) const { return positions_of(type).size(); }
  /// Distinct event types present, ascending.
  std::span<const EventId> distinct_types() const { return types_; }

 private:
  std::string sid_;
  Label label_;
  std::vector<Event> events_;
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<EventId> types_;
  std::vector<std::uint32_t> bucket_start_;  // size types_.size() + 1
  std::vector<std::uint32_t> positions_;
};

struct RawSequence {
  std::string sid;
  Label label;
  std::vector<RawEvent> events;
};

/// Positive set S+, negative set S- and their shared alphabet.
class SequenceDataset {
 public:
  SequenceDataset() : alphabet_(std::make_shared<Alphabet>()) {}

  /// Builds the alphabet from the events and sorts every sequence.
  /// Throws std::invalid_argument on duplicate sids.
  static SequenceDataset from_raw(std::vector<RawSequence> sequences);

  const Alphabet& alphabet() const { return *alphabet_; }
  std::shared_ptr<const Alphabet> shared_alphabet() const { return alphabet_; }
  std::span<const Sequence> positives() const { return positives_; }
  std::span<const Sequence> negatives() const { return negatives_; }
  std::size_t size() const { return positives_.size() + negatives_.size(); }

  std::vector<RawSequence> to_raw() const;

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<Sequence> positives_;
  std::vector<Sequence> negatives_;
};

/// from[lower, upper]to between items at positions from < to.
struct TemporalConstraint {
  std::size_t from = 0;
  std::size_t to = 0;
  Time lower = -kInf;
  Time upper = kInf;

  friend bool operator==(const TemporalConstraint&,
                         const TemporalConstraint&) = default;
};

/// True iff t_to - t_from lies in the closed interval [lower, upper].
bool satisfies(const TemporalConstraint& c, Time t_from, Time t_to);

/// A multiset of event types (sorted, duplicates allowed) and at most one
/// temporal constraint per ordered pair of item positions.
class Chronicle {
 public:
  Chronicle() = default;

  /// `items` must be sorted. Constraints given with from > to are flipped to
  /// the equivalent to[-upper, -lower]from. Throws std::invalid_argument on
  /// unsorted items, out-of-range or self-referencing positions, empty
  /// intervals and repeated pairs.
  Chronicle(std::vector<std::string> items,
            std::vector<TemporalConstraint> constraints = {});

  const std::vector<std::string>& items() const { return items_; }
  /// Sorted by (from, to).
  const std::vector<TemporalConstraint>& constraints() const {
    return constraints_;
  }
  std::size_t size() const { return items_.size(); }
  bool unconstrained() const { return constraints_.empty(); }

  /// Constraint on (from, to) if any; absent means [-inf, +inf].
  std::optional<TemporalConstraint> constraint(std::size_t from,
                                               std::size_t to) const;

  friend bool operator==(const Chronicle&, const Chronicle&) = default;
  friend bool operator<(const Chronicle& a, const Chronicle& b);

 private:
  std::vector<std::string> items_;
  std::vector<TemporalConstraint> constraints_;
};

/// g = supp_pos / supp_neg, +inf when supp_neg is zero (0/0 included).
double growth_rate(std::size_t supp_pos, std::size_t supp_neg);

struct MinedChronicle {
  Chronicle chronicle;
  std::size_t supp_pos = 0;
  std::size_t supp_neg = 0;
  double growth = 0.0;

  static MinedChronicle with_supports(Chronicle chronicle, std::size_t supp_pos,
                                      std::size_t supp_neg);
};

/// supp_pos >= sigma_min and supp_pos >= g_min * supp_neg.
bool is_discriminant(std::size_t supp_pos, std::size_t supp_neg,
                     std::size_t sigma_min, double g_min);
bool is_discriminant(const MinedChronicle& m, std::size_t sigma_min,
                     double g_min);

/// Human readable form, e.g. "{{A,B}} A#0[-inf,5]B#1".
std::string to_string(const Chronicle& c);
/// Shortest decimal representation that round-trips; "inf" and "-inf" for
/// unbounded values.
std::string format_time(Time t);

}  // namespace chronomine
