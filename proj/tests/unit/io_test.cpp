#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <regex>
#include <sstream>

#include "chronomine/crossover.hpp"
#include "chronomine/export.hpp"
#include "chronomine/io.hpp"
#include "chronomine/occurrence.hpp"
#include "chronomine/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace chronomine {
namespace {

using nlohmann::json;

SequenceDataset read(const std::string& text) {
  std::istringstream in(text);
  return read_dataset_csv(in);
}

std::size_t error_line(const std::string& text) {
  try {
    read(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

TEST(ReadCsv, Table1File) {
  auto ds = load_csv(CHRONOMINE_TEST_DATA "/table1.csv");
  EXPECT_EQ(ds.positives().size(), 3u);
  EXPECT_EQ(ds.negatives().size(), 3u);
  EXPECT_EQ(support(testing::chronicle_c(), ds.positives()), 2u);
  EXPECT_EQ(support(testing::chronicle_c(), ds.negatives()), 1u);
  EXPECT_THROW(load_csv(CHRONOMINE_TEST_DATA "/does-not-exist.csv"), InputError);
}

TEST(ReadCsv, HeaderOnlyIsEmpty) {
  auto ds = read("sid,event,timestamp,label\n");
  EXPECT_EQ(ds.size(), 0u);
}

TEST(ReadCsv, DuplicateRowsAreKept) {
  auto ds = read("sid,event,timestamp,label\n1,A,3,+\n1,A,3,+\n1,B,4,+\n");
  ASSERT_EQ(ds.positives().size(), 1u);
  EXPECT_EQ(ds.positives()[0].size(), 3u);
  EXPECT_TRUE(occurs(Chronicle({"A", "A", "B"}, {{0, 1, 0, 0}}), ds.positives()[0]));
}

TEST(ReadCsv, LabelSpellingsAndLineEndings) {
  auto ds = read("\xEF\xBB\xBFsid,event,timestamp,label\r\n1,A,1.5,pos\r\n\r\n2,B,2,negative\r\n"
                 "3,C,0,\xE2\x88\x92\n");
  EXPECT_EQ(ds.positives().size(), 1u);
  EXPECT_EQ(ds.negatives().size(), 2u);
  EXPECT_EQ(ds.positives()[0].events()[0].timestamp, 1.5);
}

TEST(ReadCsv, QuotedFields) {
  auto ds = read("sid,event,timestamp,label\n\"a,1\",\"drug \"\"x\"\"\",1,+\n");
  EXPECT_EQ(ds.positives()[0].sid(), "a,1");
  EXPECT_EQ(ds.alphabet().names()[0], "drug \"x\"");
}

TEST(ReadCsv, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("sid,event,time,label\n"), 1u);
  EXPECT_EQ(error_line("sid,event,timestamp,label\n1,A,1,+\n1,A,x,+\n"), 3u);
  EXPECT_EQ(error_line("sid,event,timestamp,label\n1,A,1\n"), 2u);
  EXPECT_EQ(error_line("sid,event,timestamp,label\n1,A,1,?\n"), 2u);
  EXPECT_EQ(error_line("sid,event,timestamp,label\n1,,1,+\n"), 2u);
  EXPECT_EQ(error_line("sid,event,timestamp,label\n1,A,inf,+\n"), 2u);
  EXPECT_EQ(error_line(""), 1u);
}

TEST(ReadCsv, InconsistentLabelNamesSid) {
  try {
    read("sid,event,timestamp,label\np7,A,1,+\np7,B,2,-\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("p7"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(WriteCsv, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto raw = testing::random_sequences(rng, 8, 6, 4, 50);
    std::erase_if(raw, [](const RawSequence& s) { return s.events.empty(); });
    for (auto& s : raw) {
      for (auto& e : s.events) e.timestamp += 0.1 * trial - 1e-7;
    }
    auto ds = SequenceDataset::from_raw(raw);
    std::ostringstream out;
    write_dataset_csv(out, ds);
    auto back = read(out.str());
    ASSERT_EQ(ds.size(), back.size());
    auto a = ds.to_raw();
    auto b = back.to_raw();
    auto key = [](const RawSequence& s) { return s.sid; };
    std::sort(a.begin(), a.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(b.begin(), b.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].sid, b[i].sid);
      EXPECT_EQ(a[i].label, b[i].label);
      ASSERT_EQ(a[i].events.size(), b[i].events.size());
      for (std::size_t k = 0; k < a[i].events.size(); ++k) {
        EXPECT_EQ(a[i].events[k].type, b[i].events[k].type);
        EXPECT_EQ(a[i].events[k].timestamp, b[i].events[k].timestamp);
      }
    }
  }
}

std::vector<Timeline> timelines(const std::string& text) {
  std::istringstream in(text);
  return read_timelines_csv(in);
}

TEST(Crossover, WindowArithmetic) {
  auto tl = timelines(
      "sid,event,timestamp\n"
      "p,X,16\np,X,17\np,Y,106.5\np,Z,107\np,X,196\np,X,197\np,S,200\np,S,300\n");
  auto r = crossover_split(tl, {"S", 3, 90});
  ASSERT_EQ(r.sequences.size(), 2u);
  const auto& pos = r.sequences[0];
  const auto& neg = r.sequences[1];
  EXPECT_EQ(pos.sid, "p/pos");
  EXPECT_EQ(pos.label, Label::Positive);
  EXPECT_EQ(neg.sid, "p/neg");
  std::vector<Time> pt, nt;
  for (auto& e : pos.events) pt.push_back(e.timestamp);
  for (auto& e : neg.events) nt.push_back(e.timestamp);
  std::sort(pt.begin(), pt.end());
  std::sort(nt.begin(), nt.end());
  EXPECT_EQ(pt, (std::vector<Time>{107, 196}));
  EXPECT_EQ(nt, (std::vector<Time>{17, 106.5}));
}

TEST(Crossover, TwoSubjectsAndSkipped) {
  auto tl = timelines("sid,event,timestamp\na,X,5\na,S,20\nb,X,1\nb,S,50\nc,X,3\n");
  auto r = crossover_split(tl, {"S", 3, 10});
  EXPECT_EQ(r.sequences.size(), 4u);
  EXPECT_EQ(r.skipped, (std::vector<std::string>{"c"}));
}

TEST(Crossover, ConfigValidation) {
  EXPECT_THROW((CrossoverConfig{"S", -1, 90}).validate(), std::invalid_argument);
  EXPECT_THROW((CrossoverConfig{"S", 0, 0}).validate(), std::invalid_argument);
  EXPECT_THROW((CrossoverConfig{"", 3, 90}).validate(), std::invalid_argument);
}

TEST(Synthetic, Deterministic) {
  auto spec = testing::planted_ab_spec();
  auto a = generate_synthetic(spec, 42);
  auto b = generate_synthetic(spec, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].sid, b[i].sid);
    ASSERT_EQ(a[i].events.size(), b[i].events.size());
    for (std::size_t k = 0; k < a[i].events.size(); ++k) {
      EXPECT_EQ(a[i].events[k].type, b[i].events[k].type);
      EXPECT_EQ(a[i].events[k].timestamp, b[i].events[k].timestamp);
    }
  }
  auto c = generate_synthetic(spec, 43);
  bool differ = false;
  for (std::size_t i = 0; i < a.size() && !differ; ++i) {
    differ = a[i].events.size() != c[i].events.size() ||
             a[i].events.front().timestamp != c[i].events.front().timestamp;
  }
  EXPECT_TRUE(differ);
}

TEST(Synthetic, PlantedGrowthIsHigh) {
  auto spec = testing::planted_ab_spec();
  auto ds = generate_synthetic_dataset(spec, 7);
  EXPECT_EQ(ds.positives().size(), 200u);
  EXPECT_EQ(ds.negatives().size(), 200u);
  const std::size_t p = support(spec.planted, ds.positives());
  const std::size_t n = support(spec.planted, ds.negatives());
  EXPECT_GE(p, 150u);
  EXPECT_GE(growth_rate(p, n), 2.0);
}

TEST(Synthetic, NoNoisePerfectPlant) {
  SyntheticSpec spec;
  spec.positives = 20;
  spec.negatives = 20;
  spec.planted = Chronicle({"A", "B", "C"}, {{0, 1, 2, 4}, {1, 2, -3, -1}, {0, 2, 0, 2}});
  spec.p_pos = 1;
  spec.p_neg = 0;
  spec.noise_events = 0;
  auto ds = generate_synthetic_dataset(spec, 1);
  auto m = MinedChronicle::with_supports(spec.planted, support(spec.planted, ds.positives()),
                                         support(spec.planted, ds.negatives()));
  EXPECT_EQ(m.supp_pos, 20u);
  EXPECT_EQ(m.growth, kInf);
  for (const auto& s : ds.negatives()) EXPECT_EQ(s.size(), 0u);
}

TEST(Synthetic, EqualRatesGrowthNearOne) {
  auto spec = testing::planted_ab_spec();
  spec.p_pos = 0.5;
  spec.p_neg = 0.5;
  auto ds = generate_synthetic_dataset(spec, 5);
  const double g = growth_rate(support(spec.planted, ds.positives()),
                               support(spec.planted, ds.negatives()));
  EXPECT_GT(g, 0.7);
  EXPECT_LT(g, 1.4);
}

TEST(Synthetic, InfeasibleConstraintsRejected) {
  SyntheticSpec spec;
  spec.planted = Chronicle({"A", "B", "C"}, {{0, 1, 5, 6}, {1, 2, 5, 6}, {0, 2, 0, 3}});
  EXPECT_THROW(generate_synthetic(spec, 0), std::invalid_argument);
  EXPECT_TRUE(minimal_network(spec.planted).empty());
  // no integer in [0.2, 0.8]
  spec.planted = Chronicle({"A", "B"}, {{0, 1, 0.2, 0.8}});
  EXPECT_THROW(generate_synthetic(spec, 0), std::invalid_argument);
}

TEST(Synthetic, MinimalNetworkTightens) {
  auto net = minimal_network(Chronicle({"A", "B", "C"}, {{0, 1, 1, 2}, {1, 2, 1, 2}, {0, 2, 0, 10}}));
  ASSERT_EQ(net.size(), 3u);
  EXPECT_EQ(net[0][2], 4);
  EXPECT_EQ(-net[2][0], 2);
}

TEST(Synthetic, ParseSpec) {
  auto spec = parse_synthetic_spec(R"({"positives": 5, "negatives": 3,
      "planted": {"items": ["A","B"], "constraints": [{"from":0,"to":1,"lower":10,"upper":20}]},
      "p_pos": 0.9, "noise_types": ["X"], "noise_events": 2})");
  EXPECT_EQ(spec.positives, 5u);
  EXPECT_EQ(spec.planted, Chronicle({"A", "B"}, {{0, 1, 10, 20}}));
  EXPECT_EQ(spec.p_neg, 0.05);
  EXPECT_THROW(parse_synthetic_spec(R"({"p_pos": 2})"), std::exception);
  EXPECT_THROW(parse_synthetic_spec("{"), std::exception);
}

TEST(Export, JsonOfTable2Rule) {
  std::vector<MinedChronicle> r{MinedChronicle::with_supports(
      Chronicle({"A", "B", "C"}, {{0, 1, -kInf, 5}, {1, 2, -kInf, 2}}), 2, 1)};
  auto j = json::parse(to_json(r));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["constraints"], json::parse(R"([{"from":0,"to":1,"lower":null,"upper":5},
                                                 {"from":1,"to":2,"lower":null,"upper":2}])"));
  EXPECT_EQ(j[0]["items"], json::parse(R"(["A","B","C"])"));
  EXPECT_EQ(j[0]["supp_pos"], 2);
  EXPECT_EQ(j[0]["growth"], 2);
}

TEST(Export, EmptyResults) {
  EXPECT_EQ(to_json({}), "[]");
  EXPECT_EQ(to_csv({}), "items,constraints,supp_pos,supp_neg,growth\n");
  EXPECT_EQ(render({}, OutputFormat::Json), "[]\n");
}

TEST(Export, InfiniteValuesAreNull) {
  std::vector<MinedChronicle> r{
      MinedChronicle::with_supports(Chronicle({"A", "B"}, {{0, 1, 3, kInf}}), 4, 0)};
  auto text = to_json(r);
  EXPECT_EQ(text.find("inf"), std::string::npos);
  EXPECT_EQ(text.find("e+308"), std::string::npos);
  auto j = json::parse(text);
  EXPECT_TRUE(j[0]["growth"].is_null());
  EXPECT_TRUE(j[0]["constraints"][0]["upper"].is_null());
}

TEST(Export, DotOfChronicleC) {
  std::vector<MinedChronicle> r{MinedChronicle::with_supports(testing::chronicle_c(), 2, 1)};
  auto dot = to_dot(r);
  const std::regex node(R"((^|\n)\s*n\d+ \[label=)");
  const std::regex edge(R"(n\d+ -> n\d+ \[label="\[)");
  auto count = [&](const std::regex& re) {
    return std::distance(std::sregex_iterator(dot.begin(), dot.end(), re), std::sregex_iterator());
  };
  EXPECT_EQ(count(node), 5);
  EXPECT_EQ(count(edge), 5);
  EXPECT_NE(dot.find("[4,5]"), std::string::npos);
}

TEST(Export, Csv) {
  std::vector<MinedChronicle> r{MinedChronicle::with_supports(
      Chronicle({"A", "B", "C"}, {{0, 1, -kInf, 5}, {1, 2, 0.5, 2}}), 2, 1)};
  EXPECT_EQ(to_csv(r),
            "items,constraints,supp_pos,supp_neg,growth\n"
            "A;B;C,\"0-1:[-inf,5];1-2:[0.5,2]\",2,1,2\n");
}

TEST(Export, ParseRoundTrip) {
  std::mt19937_64 rng(1);
  std::vector<MinedChronicle> r;
  for (int i = 0; i < 50; ++i) {
    r.push_back(MinedChronicle::with_supports(testing::random_chronicle(rng, 4, 4, 9), 1, 1));
  }
  auto back = parse_chronicles_json(to_json(r));
  ASSERT_EQ(back.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(back[i], r[i].chronicle);
}

TEST(Export, ParseRejectsBadInput) {
  EXPECT_THROW(parse_chronicles_json("not json"), InputError);
  EXPECT_THROW(parse_chronicles_json(R"([{"constraints": []}])"), InputError);
  EXPECT_THROW(parse_chronicles_json(R"([{"items": ["A"], "constraints": [{"from":0,"to":3}]}])"),
               InputError);
  EXPECT_THROW(parse_chronicles_json(R"([{"items":["A","B"],"constraints":[{"from":0,"to":1,"lower":"x"}]}])"),
               InputError);
}

TEST(Export, ParseSortsItems) {
  auto c = parse_chronicle_json(
      R"({"items": ["B","A"], "constraints": [{"from":0,"to":1,"lower":1,"upper":2}]})");
  EXPECT_EQ(c, Chronicle({"A", "B"}, {{0, 1, -2, -1}}));
}

TEST(Export, FormatNames) {
  EXPECT_EQ(parse_output_format("dot"), OutputFormat::Dot);
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
}

}  // namespace
}  // namespace chronomine
