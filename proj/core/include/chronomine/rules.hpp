#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "chronomine/model.hpp"
#include "chronomine/multiset.hpp"
#include "chronomine/occurrence.hpp"

namespace chronomine {

/// Relational dataset of inter-event durations for one multiset.
///
/// Attribute k is the duration t(j) - t(i) for the item pair pairs()[k],
/// pairs ordered (0,1), (0,2), ..., (n-2,n-1). One row per occurrence.
class DurationTable {
 public:
  struct Row {
    std::string sid;
    Label label;
    std::vector<Time> values;
  };

  DurationTable() = default;
  /// Requires at least two items.
  explicit DurationTable(Multiset multiset);

  const Multiset& multiset() const { return multiset_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const {
    return pairs_;
  }
  std::size_t attribute_count() const { return pairs_.size(); }
  /// "A->B", with "[k]" suffixes for repeated types, e.g. "C[1]->C[2]".
  const std::string& attribute_name(std::size_t k) const { return names_[k]; }
  std::size_t attribute_index(std::size_t from, std::size_t to) const;

  const std::vector<Row>& rows() const { return rows_; }
  void add_row(Row row);

  std::size_t count(Label label) const;

  /// Set when some sequence hit the occurrence cap.
  bool truncated() const { return truncated_; }
  void set_truncated(bool t) { truncated_ = t; }

  /// Columns: sid, one per attribute, label.
  void write_csv(std::ostream& os) const;

 private:
  Multiset multiset_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  bool truncated_ = false;
};

/// One row per canonical occurrence of the unconstrained multiset in every
/// sequence of S+ and S-.
DurationTable build_duration_table(const Multiset& multiset,
                                   const SequenceDataset& dataset,
                                   std::size_t occurrence_cap =
                                       kDefaultOccurrenceCap);

/// Same, restricted to the given sequences (must hold every sequence that
/// can contain the multiset for the table to be complete).
DurationTable build_duration_table(const Multiset& multiset,
                                   std::span<const Sequence* const> sequences,
                                   std::size_t occurrence_cap =
                                       kDefaultOccurrenceCap);

/// lower <= attribute <= upper, either side possibly infinite.
struct Condition {
  std::size_t attribute;
  Time lower = -kInf;
  Time upper = kInf;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Conjunction of interval conditions concluding the positive label.
/// At most one condition per attribute, kept sorted by attribute.
class NumericalRule {
 public:
  const std::vector<Condition>& conditions() const { return conditions_; }
  bool empty() const { return conditions_.empty(); }

  /// Intersects the interval of `c.attribute` with [c.lower, c.upper].
  void restrict(const Condition& c);
  bool covers(const std::vector<Time>& values) const;

  friend bool operator==(const NumericalRule&, const NumericalRule&) = default;

 private:
  std::vector<Condition> conditions_;
};

std::string to_string(const NumericalRule& rule, const DurationTable& table);

struct RuleLearnerConfig {
  double g_min = 2.0;
  std::uint64_t seed = 0;
  /// Grow/prune split (IREP). Only applied when the current rows count at
  /// least `min_rows_for_pruning` and each label spans two or more sids.
  bool prune = true;
  std::size_t min_rows_for_pruning = 20;
  double grow_fraction = 2.0 / 3.0;
  std::size_t max_rules = 64;
};

/// Sequential covering for the positive class. Every returned rule covers at
/// least one positive row and reaches row-level growth >= g_min on the rows
/// still uncovered when it was learned (hence on the whole table too).
std::vector<NumericalRule> induce_rules(const DurationTable& table,
                                        const RuleLearnerConfig& config);

/// Item pairs of an n-item multiset in attribute order.
std::vector<std::pair<std::size_t, std::size_t>> item_pairs(std::size_t n);

/// Each condition on attribute (i,j) becomes the constraint i[lower,upper]j.
/// Pairs without a condition stay unconstrained.
Chronicle translate(const NumericalRule& rule, const Multiset& multiset);

/// Sequence-level supports and growth rate.
MinedChronicle reevaluate(const Chronicle& c, const SequenceDataset& dataset);

}  // namespace chronomine
