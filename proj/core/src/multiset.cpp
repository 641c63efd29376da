#include "chronomine/multiset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace chronomine {

namespace {

class TidSet {
 public:
  explicit TidSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  TidSet operator&(const TidSet& other) const {
    TidSet out;
    out.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out.words_[i] = words_[i] & other.words_[i];
    }
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Node {
  IndexedItem item;
  TidSet tids;
  std::size_t support;
};

class Eclat {
 public:
  Eclat(std::size_t sigma_min, const ItemsetMiningOptions& options,
        std::vector<FrequentItemset>& out)
      : sigma_min_(sigma_min), options_(options), out_(out) {}

  void run(const std::vector<Node>& frontier, Itemset& prefix,
           std::size_t prefix_size) {
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Node& node = frontier[i];
      const std::size_t size = extended_size(prefix, prefix_size, node.item);
      if (size > options_.max_multiset_size) continue;

      prefix.push_back(node.item);
      out_.push_back({prefix, node.support});

      std::vector<Node> next;
      for (std::size_t j = i + 1; j < frontier.size(); ++j) {
        const Node& other = frontier[j];
        if (options_.skip_redundant && other.item.type == node.item.type) {
          continue;
        }
        TidSet tids = node.tids & other.tids;
        std::size_t support = tids.count();
        if (support >= sigma_min_) {
          next.push_back({other.item, std::move(tids), support});
        }
      }
      if (!next.empty()) run(next, prefix, size);
      prefix.pop_back();
    }
  }

 private:
  // Items are visited in (type, index) order, so the last prefix item of the
  // same type carries the largest index seen for that type.
  static std::size_t extended_size(const Itemset& prefix, std::size_t size,
                                   const IndexedItem& item) {
    if (!prefix.empty() && prefix.back().type == item.type) {
      return size - prefix.back().index + item.index;
    }
    return size + item.index;
  }

  std::size_t sigma_min_;
  const ItemsetMiningOptions& options_;
  std::vector<FrequentItemset>& out_;
};

}  // namespace

std::vector<Transaction> encode(std::span<const Sequence> sequences) {
  std::vector<Transaction> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) {
    Transaction t{s.sid(), {}};
    for (EventId type : s.distinct_types()) {
      const auto n = static_cast<std::uint32_t>(s.count_of(type));
      for (std::uint32_t k = 1; k <= n; ++k) t.items.push_back({type, k});
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<FrequentItemset> mine_frequent_itemsets(
    std::span<const Transaction> transactions, std::size_t sigma_min,
    const ItemsetMiningOptions& options) {
  if (sigma_min < 1) throw std::invalid_argument("sigma_min must be >= 1");

  std::map<IndexedItem, TidSet> vertical;
  for (std::size_t tid = 0; tid < transactions.size(); ++tid) {
    for (const auto& item : transactions[tid].items) {
      auto [it, inserted] = vertical.try_emplace(item, transactions.size());
      it->second.set(tid);
    }
  }
  std::vector<Node> frontier;
  for (auto& [item, tids] : vertical) {
    std::size_t support = tids.count();
    if (support >= sigma_min) frontier.push_back({item, std::move(tids), support});
  }

  std::vector<FrequentItemset> out;
  Itemset prefix;
  Eclat(sigma_min, options, out).run(frontier, prefix, 0);
  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return a.items < b.items;
            });
  return out;
}

std::vector<Multiset> decode_to_multisets(std::span<const Itemset> itemsets,
                                          const Alphabet& alphabet) {
  std::vector<Multiset> out;
  for (const auto& itemset : itemsets) {
    auto sorted = itemset;
    std::sort(sorted.begin(), sorted.end());
    bool redundant = false;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].type == sorted[i - 1].type) redundant = true;
    }
    if (redundant) continue;
    Multiset m;
    for (const auto& item : sorted) {
      m.insert(m.end(), item.index, alphabet.name(item.type));
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<FrequentMultiset> extract_multisets(
    std::span<const Sequence> sequences, std::size_t sigma_min,
    std::size_t min_size, std::size_t max_size) {
  if (sequences.empty()) return {};
  const Alphabet& alphabet = sequences.front().alphabet();
  auto transactions = encode(sequences);
  ItemsetMiningOptions options;
  options.skip_redundant = true;
  options.max_multiset_size = max_size;
  auto frequent = mine_frequent_itemsets(transactions, sigma_min, options);

  std::vector<FrequentMultiset> out;
  for (const auto& f : frequent) {
    std::span<const Itemset> one(&f.items, 1);
    auto decoded = decode_to_multisets(one, alphabet);
    if (decoded.empty()) continue;
    auto& m = decoded.front();
    if (m.size() < min_size || m.size() > max_size) continue;
    out.push_back({std::move(m), f.support});
  }
  std::sort(out.begin(), out.end(),
            [](const FrequentMultiset& a, const FrequentMultiset& b) {
              return a.items < b.items;
            });
  return out;
}

}  // namespace chronomine
