#include <gtest/gtest.h>

#include <random>

#include "chronomine/multiset.hpp"
#include "chronomine/occurrence.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace chronomine {
namespace {

std::vector<std::pair<std::string, std::uint32_t>> named(const Itemset& items,
                                                         const Alphabet& alphabet) {
  std::vector<std::pair<std::string, std::uint32_t>> out;
  for (const auto& it : items) out.emplace_back(alphabet.name(it.type), it.index);
  return out;
}

using Named = std::vector<std::pair<std::string, std::uint32_t>>;

TEST(Encode, Table1Sequences) {
  auto ds = testing::table1();
  auto tx = encode(ds.positives());
  ASSERT_EQ(tx.size(), 3u);
  EXPECT_EQ(tx[0].sid, "1");
  EXPECT_EQ(named(tx[0].items, ds.alphabet()),
            (Named{{"A", 1}, {"A", 2}, {"B", 1}, {"C", 1}, {"C", 2}, {"D", 1}}));
  auto neg = encode(ds.negatives());
  const auto& s5 = *std::find_if(neg.begin(), neg.end(), [](auto& t) { return t.sid == "5"; });
  EXPECT_EQ(named(s5.items, ds.alphabet()), (Named{{"A", 1}, {"B", 1}, {"C", 1}}));
}

TEST(Encode, EmptySequence) {
  auto ds = SequenceDataset::from_raw({{"e", Label::Positive, {}}});
  auto tx = encode(ds.positives());
  ASSERT_EQ(tx.size(), 1u);
  EXPECT_TRUE(tx[0].items.empty());
}

TEST(MineItemsets, Table1FrequentSingletons) {
  auto ds = testing::table1();
  auto tx = encode(ds.positives());
  Named singles;
  for (const auto& f : mine_frequent_itemsets(tx, 3)) {
    if (f.items.size() == 1) singles.push_back(named(f.items, ds.alphabet())[0]);
  }
  EXPECT_EQ(singles, (Named{{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}}));

  bool c2 = false;
  for (const auto& f : mine_frequent_itemsets(tx, 2)) {
    if (named(f.items, ds.alphabet()) == Named{{"C", 2}}) c2 = f.support == 2;
  }
  EXPECT_TRUE(c2);
}

TEST(MineItemsets, RejectsZeroThreshold) {
  EXPECT_THROW(mine_frequent_itemsets({}, 0), std::invalid_argument);
}

TEST(Decode, Examples) {
  auto ds = testing::table1();
  const auto a = *ds.alphabet().find("A");
  const auto b = *ds.alphabet().find("B");
  std::vector<Itemset> in{{{a, 2}, {b, 1}}, {{a, 1}, {a, 2}}, {{b, 1}}};
  auto out = decode_to_multisets(in, ds.alphabet());
  EXPECT_EQ(out, (std::vector<Multiset>{{"A", "A", "B"}, {"B"}}));
}

TEST(ExtractMultisets, Table1Sigma3) {
  auto ds = testing::table1();
  std::vector<Multiset> got;
  for (auto& m : extract_multisets(ds.positives(), 3, 2)) {
    got.push_back(m.items);
    EXPECT_EQ(m.support, 3u);
  }
  EXPECT_EQ(got, (std::vector<Multiset>{{"A", "B"},
                                        {"A", "B", "C"},
                                        {"A", "B", "C", "D"},
                                        {"A", "B", "D"},
                                        {"A", "C"},
                                        {"A", "C", "D"},
                                        {"A", "D"},
                                        {"B", "C"},
                                        {"B", "C", "D"},
                                        {"B", "D"},
                                        {"C", "D"}}));
}

TEST(ExtractMultisets, MaxSizeBound) {
  auto ds = testing::table1();
  for (auto& m : extract_multisets(ds.positives(), 1, 1, 2)) EXPECT_LE(m.items.size(), 2u);
  bool seen_ccc = false;
  for (auto& m : extract_multisets(ds.positives(), 2, 1)) {
    seen_ccc |= m.items == Multiset{"A", "B", "C", "C", "D"};
  }
  EXPECT_TRUE(seen_ccc);
}

TEST(ExtractMultisets, EmptyInput) {
  EXPECT_TRUE(extract_multisets({}, 1).empty());
}

// Soundness, completeness and supports match direct counting.
TEST(ExtractMultisets, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto ds = SequenceDataset::from_raw(testing::random_sequences(rng, 10, 7, 4, 10));
    auto set = ds.positives().empty() ? ds.negatives() : ds.positives();
    std::uniform_int_distribution<std::size_t> sig(1, std::max<std::size_t>(1, set.size()));
    const std::size_t sigma = sig(rng);
    std::vector<Multiset> got;
    for (auto& m : extract_multisets(set, sigma)) {
      got.push_back(m.items);
      EXPECT_EQ(m.support, support(Chronicle(m.items), set));
    }
    EXPECT_EQ(got, testing::brute_force_frequent_multisets(set, sigma)) << "trial " << trial;
  }
}

TEST(MineItemsets, AntiMonotone) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto ds = SequenceDataset::from_raw(testing::random_sequences(rng, 12, 6, 4, 10));
    auto tx = encode(ds.positives().empty() ? ds.negatives() : ds.positives());
    auto frequent = mine_frequent_itemsets(tx, 2);
    std::set<Itemset> found;
    for (auto& f : frequent) found.insert(f.items);
    for (auto& f : frequent) {
      for (std::size_t drop = 0; drop < f.items.size() && f.items.size() > 1; ++drop) {
        auto sub = f.items;
        sub.erase(sub.begin() + drop);
        EXPECT_TRUE(found.count(sub));
      }
    }
  }
}

TEST(Encode, SingletonSupportCountsOccurrences) {
  std::mt19937_64 rng(4);
  auto ds = SequenceDataset::from_raw(testing::random_sequences(rng, 40, 8, 3, 10));
  auto set = ds.positives();
  auto tx = encode(set);
  for (const auto& f : mine_frequent_itemsets(tx, 1)) {
    if (f.items.size() != 1) continue;
    std::size_t expected = 0;
    for (const auto& s : set) expected += s.count_of(f.items[0].type) >= f.items[0].index;
    EXPECT_EQ(f.support, expected);
  }
}

}  // namespace
}  // namespace chronomine
