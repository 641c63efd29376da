#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chronomine/model.hpp"

namespace chronomine {

inline constexpr std::size_t kDefaultOccurrenceCap = 10000;

/// Injective mapping of chronicle items onto sequence events.
///
/// mapping[i] is the position in the sequence of the event matched by item i
/// and timestamps[i] its timestamp. Items of equal type are mapped to
/// increasing positions, so permutations among them are reported once.
struct Occurrence {
  std::string sid;
  std::vector<std::uint32_t> mapping;
  std::vector<Time> timestamps;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct OccurrenceList {
  std::vector<Occurrence> occurrences;
  /// Enumeration stopped at the cap with more occurrences left.
  bool truncated = false;
};

/// Chronicle compiled against one alphabet. Sequences passed in must use the
/// same alphabet; chronicles naming types outside it never occur.
///
/// Search is a backtracking over the items in multiset order. For each item
/// the candidate events are the ones of its type whose timestamp falls in
/// the intersection of the windows implied by the constraints towards
/// already mapped items.
class ChronicleMatcher {
 public:
  ChronicleMatcher(const Chronicle& chronicle, const Alphabet& alphabet);

  bool occurs(const Sequence& s) const;
  OccurrenceList enumerate(const Sequence& s,
                           std::size_t cap = kDefaultOccurrenceCap) const;

  /// Calls `visit` with each canonical mapping, at most `cap` times.
  /// Returns true when the enumeration was truncated.
  bool for_each(const Sequence& s, std::size_t cap,
                const std::function<void(std::span<const std::uint32_t>)>&
                    visit) const;

  std::size_t support(std::span<const Sequence> sequences) const;

  std::size_t size() const { return items_.size(); }

 private:
  struct Bound {
    std::size_t from;
    Time lower;
    Time upper;
  };
  struct Item {
    EventId type;
    bool same_as_previous;
    std::vector<Bound> bounds;  // constraints (from, this) with from < this
  };

  template <typename Visit>
  bool search(const Sequence& s, std::size_t depth,
              std::vector<std::uint32_t>& mapping, Visit& visit) const;

  std::vector<Item> items_;
  bool resolvable_ = true;
};

OccurrenceList enumerate_occurrences(const Chronicle& c, const Sequence& s,
                                     std::size_t cap = kDefaultOccurrenceCap);
bool occurs(const Chronicle& c, const Sequence& s);
/// Number of sequences holding at least one occurrence.
std::size_t support(const Chronicle& c, std::span<const Sequence> sequences);

}  // namespace chronomine
