#pragma once

#include <string>
#include <vector>

#include "chronomine/model.hpp"
#include "chronomine/rules.hpp"
#include "chronomine/synthetic.hpp"

namespace chronomine::testing {

/// Six sequences over A..E, three positive, three negative.
inline std::vector<RawSequence> table1_raw() {
  using L = Label;
  return {
      {"1", L::Positive, {{"A", 1}, {"B", 3}, {"A", 4}, {"C", 5}, {"C", 6}, {"D", 7}}},
      {"2", L::Positive, {{"B", 2}, {"D", 4}, {"A", 5}, {"C", 7}}},
      {"3", L::Positive, {{"A", 1}, {"B", 4}, {"C", 5}, {"B", 6}, {"C", 8}, {"D", 9}}},
      {"4", L::Negative, {{"B", 4}, {"A", 6}, {"E", 8}, {"C", 9}}},
      {"5", L::Negative, {{"B", 1}, {"A", 3}, {"C", 4}}},
      {"6", L::Negative, {{"C", 4}, {"B", 5}, {"A", 6}, {"C", 7}, {"D", 10}}},
  };
}

inline SequenceDataset table1() { return SequenceDataset::from_raw(table1_raw()); }

/// Sequence by sid ("1".."6").
inline const Sequence& table1_sequence(const SequenceDataset& ds, const std::string& sid) {
  for (auto set : {ds.positives(), ds.negatives()}) {
    for (const auto& s : set) {
      if (s.sid() == sid) return s;
    }
  }
  throw std::out_of_range(sid);
}

/// The five-item chronicle with constraints e1[-1,3]e2, e1[-3,5]e3,
/// e2[-2,2]e3, e2[4,5]e5, e3[1,3]e4.
inline Chronicle chronicle_c() {
  return Chronicle({"A", "B", "C", "C", "D"},
                   {{0, 1, -1, 3}, {0, 2, -3, 5}, {1, 2, -2, 2}, {1, 4, 4, 5}, {2, 3, 1, 3}});
}

/// Occurs in sequences 1 and 3 only.
inline Chronicle chronicle_c1() {
  return Chronicle({"A", "B", "C"}, {{0, 1, 2, 3}, {1, 2, 1, 2}});
}

/// Occurs in sequence 6 only.
inline Chronicle chronicle_c2() { return Chronicle({"A", "C"}, {{0, 1, -2, -1}}); }

/// The six-row duration table of {{A,B,C}} used verbatim, columns given in
/// the printed order A->B, B->C, A->C.
inline DurationTable table2() {
  DurationTable t({"A", "B", "C"});
  const auto ab = t.attribute_index(0, 1);
  const auto bc = t.attribute_index(1, 2);
  const auto ac = t.attribute_index(0, 2);
  struct R {
    const char* sid;
    double ab, bc, ac;
    Label label;
  };
  const R rows[] = {{"1", 2, 2, 4, Label::Positive},   {"1", -1, 2, 1, Label::Positive},
                    {"2", 5, -2, 3, Label::Positive},  {"3", 3, 0, 3, Label::Positive},
                    {"5", -1, 3, 1, Label::Negative},  {"6", 6, -1, 5, Label::Negative}};
  for (const auto& r : rows) {
    std::vector<Time> v(3);
    v[ab] = r.ab;
    v[bc] = r.bc;
    v[ac] = r.ac;
    t.add_row({r.sid, r.label, v});
  }
  return t;
}

/// 200+200 sequences, ({{A,B}}, A[10,20]B) planted at 0.8 / 0.05, eight
/// noise events per sequence over A..E on [0,200].
inline SyntheticSpec planted_ab_spec() {
  SyntheticSpec spec;
  spec.positives = 200;
  spec.negatives = 200;
  spec.planted = Chronicle({"A", "B"}, {{0, 1, 10, 20}});
  spec.p_pos = 0.8;
  spec.p_neg = 0.05;
  spec.noise_types = {"A", "B", "C", "D", "E"};
  spec.noise_events = 8;
  spec.horizon = 200;
  return spec;
}

}  // namespace chronomine::testing
