#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chronomine/model.hpp"

namespace chronomine {

/// Sorted list of event types with repetitions.
using Multiset = std::vector<std::string>;

/// "at least `index` events of `type`".
struct IndexedItem {
  EventId type;
  std::uint32_t index;  // >= 1

  friend auto operator<=>(const IndexedItem&, const IndexedItem&) = default;
};

/// Items are sorted and downward closed on the index of each type.
struct Transaction {
  std::string sid;
  std::vector<IndexedItem> items;
};

using Itemset = std::vector<IndexedItem>;

struct FrequentItemset {
  Itemset items;
  std::size_t support = 0;
};

/// An event type occurring n times yields the items (type,1) .. (type,n).
std::vector<Transaction> encode(std::span<const Sequence> sequences);

struct ItemsetMiningOptions {
  /// Skip itemsets holding two indices of the same type. Every superset of
  /// such an itemset has the same defect, so whole branches are cut.
  bool skip_redundant = false;
  /// Bound on the decoded multiset size (sum of the largest index per type).
  std::size_t max_multiset_size = std::numeric_limits<std::size_t>::max();
};

/// Complete depth-first (Eclat) enumeration of the non-empty itemsets with
/// transaction support >= sigma_min. Output is sorted by itemset.
std::vector<FrequentItemset> mine_frequent_itemsets(
    std::span<const Transaction> transactions, std::size_t sigma_min,
    const ItemsetMiningOptions& options = {});

/// Drops itemsets with repeated types, expands (type, k) to k copies of the
/// type. The empty itemset decodes to the empty multiset. Output keeps the
/// input order of the surviving itemsets.
std::vector<Multiset> decode_to_multisets(std::span<const Itemset> itemsets,
                                          const Alphabet& alphabet);

struct FrequentMultiset {
  Multiset items;
  std::size_t support = 0;
};

/// Multisets whose constraint-free chronicle has support >= sigma_min in
/// `sequences`, with min_size <= cardinality <= max_size. Sorted
/// lexicographically.
std::vector<FrequentMultiset> extract_multisets(
    std::span<const Sequence> sequences, std::size_t sigma_min,
    std::size_t min_size = 1,
    std::size_t max_size = std::numeric_limits<std::size_t>::max());

}  // namespace chronomine
