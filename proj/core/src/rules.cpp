#include "chronomine/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string_view>
#include <tuple>

namespace chronomine {

std::vector<std::pair<std::size_t, std::size_t>> item_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

DurationTable::DurationTable(Multiset multiset)
    : multiset_(std::move(multiset)) {
  if (multiset_.size() < 2) {
    throw std::invalid_argument("duration table needs at least two items");
  }
  if (!std::is_sorted(multiset_.begin(), multiset_.end())) {
    throw std::invalid_argument("multiset must be sorted");
  }
  pairs_ = item_pairs(multiset_.size());

  std::vector<std::string> labels(multiset_.size());
  for (std::size_t i = 0; i < multiset_.size(); ++i) {
    auto first = std::find(multiset_.begin(), multiset_.end(), multiset_[i]);
    auto last = std::find_if(first, multiset_.end(),
                             [&](const std::string& s) { return s != multiset_[i]; });
    labels[i] = multiset_[i];
    if (last - first > 1) {
      labels[i] += "[" + std::to_string(i - (first - multiset_.begin()) + 1) + "]";
    }
  }
  for (auto [i, j] : pairs_) names_.push_back(labels[i] + "->" + labels[j]);
}

std::size_t DurationTable::attribute_index(std::size_t from,
                                           std::size_t to) const {
  auto it = std::find(pairs_.begin(), pairs_.end(), std::pair(from, to));
  if (it == pairs_.end()) throw std::out_of_range("no such item pair");
  return static_cast<std::size_t>(it - pairs_.begin());
}

void DurationTable::add_row(Row row) {
  if (row.values.size() != pairs_.size()) {
    throw std::invalid_argument("row width does not match the attribute count");
  }
  rows_.push_back(std::move(row));
}

std::size_t DurationTable::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      rows_.begin(), rows_.end(), [&](const Row& r) { return r.label == label; }));
}

void DurationTable::write_csv(std::ostream& os) const {
  os << "sid";
  for (const auto& n : names_) os << ',' << n;
  os << ",label\n";
  for (const auto& r : rows_) {
    os << r.sid;
    for (Time v : r.values) os << ',' << format_time(v);
    os << ',' << label_symbol(r.label) << '\n';
  }
}

DurationTable build_duration_table(const Multiset& multiset,
                                   std::span<const Sequence* const> sequences,
                                   std::size_t occurrence_cap) {
  DurationTable table(multiset);
  if (sequences.empty()) return table;
  ChronicleMatcher matcher(Chronicle(multiset), sequences.front()->alphabet());
  const auto& pairs = table.pairs();
  bool truncated = false;
  for (const Sequence* s : sequences) {
    const auto events = s->events();
    truncated |= matcher.for_each(
        *s, occurrence_cap, [&](std::span<const std::uint32_t> m) {
          DurationTable::Row row{s->sid(), s->label(), {}};
          row.values.reserve(pairs.size());
          for (auto [i, j] : pairs) {
            row.values.push_back(events[m[j]].timestamp -
                                 events[m[i]].timestamp);
          }
          table.add_row(std::move(row));
        });
  }
  table.set_truncated(truncated);
  return table;
}

DurationTable build_duration_table(const Multiset& multiset,
                                   const SequenceDataset& dataset,
                                   std::size_t occurrence_cap) {
  std::vector<const Sequence*> all;
  all.reserve(dataset.size());
  for (const auto& s : dataset.positives()) all.push_back(&s);
  for (const auto& s : dataset.negatives()) all.push_back(&s);
  return build_duration_table(multiset, all, occurrence_cap);
}

void NumericalRule::restrict(const Condition& c) {
  auto it = std::lower_bound(
      conditions_.begin(), conditions_.end(), c.attribute,
      [](const Condition& x, std::size_t a) { return x.attribute < a; });
  if (it != conditions_.end() && it->attribute == c.attribute) {
    it->lower = std::max(it->lower, c.lower);
    it->upper = std::min(it->upper, c.upper);
  } else {
    conditions_.insert(it, c);
  }
}

bool NumericalRule::covers(const std::vector<Time>& values) const {
  return std::all_of(conditions_.begin(), conditions_.end(),
                     [&](const Condition& c) {
                       const Time v = values[c.attribute];
                       return v >= c.lower && v <= c.upper;
                     });
}

std::string to_string(const NumericalRule& rule, const DurationTable& table) {
  std::string out;
  for (const auto& c : rule.conditions()) {
    if (!out.empty()) out += " && ";
    const auto& name = table.attribute_name(c.attribute);
    if (c.lower > -kInf && c.upper < kInf) {
      out += name + " in [" + format_time(c.lower) + "," +
             format_time(c.upper) + "]";
    } else if (c.upper < kInf) {
      out += name + " <= " + format_time(c.upper);
    } else if (c.lower > -kInf) {
      out += name + " >= " + format_time(c.lower);
    } else {
      out += name + " any";
    }
  }
  if (out.empty()) out = "true";
  return out + " => +";
}

namespace {

using RowIndex = std::uint32_t;

/// One added literal, kept in order of addition for pruning.
struct Literal {
  std::size_t attribute;
  bool upper;  // attribute <= threshold when true, >= otherwise
  Time threshold;

  Condition as_condition() const {
    return upper ? Condition{attribute, -kInf, threshold}
                 : Condition{attribute, threshold, kInf};
  }
};

struct Candidate {
  Literal literal;
  double gain;
  std::size_t positives;
};

class RuleInducer {
 public:
  RuleInducer(const DurationTable& table, const RuleLearnerConfig& config)
      : table_(table), config_(config), rng_(config.seed) {
    const std::size_t n = table.rows().size();
    log2_.resize(n + 1);
    for (std::size_t k = 1; k <= n; ++k) log2_[k] = std::log2(double(k));
    std::map<std::string_view, std::size_t> sids;
    sid_of_.reserve(n);
    for (const auto& row : table.rows()) {
      sid_of_.push_back(sids.try_emplace(row.sid, sids.size()).first->second);
    }
    sid_count_ = sids.size();
    by_value_.resize(table.attribute_count());
    for (std::size_t a = 0; a < by_value_.size(); ++a) {
      std::vector<std::pair<Time, RowIndex>> keyed(n);
      for (RowIndex i = 0; i < n; ++i) keyed[i] = {value(i, a), i};
      std::sort(keyed.begin(), keyed.end());
      auto& order = by_value_[a];
      order.reserve(n);
      for (const auto& [v, i] : keyed) order.push_back(i);
    }
  }

  std::vector<NumericalRule> run() {
    std::vector<RowIndex> positives;
    std::vector<RowIndex> negatives;
    const auto& rows = table_.rows();
    for (RowIndex i = 0; i < rows.size(); ++i) {
      (is_positive(i) ? positives : negatives).push_back(i);
    }
    if (positives.empty()) return {};
    if (negatives.empty()) return {NumericalRule{}};

    std::vector<NumericalRule> rules;
    while (!positives.empty() && rules.size() < config_.max_rules) {
      std::vector<RowIndex> grow;
      std::vector<RowIndex> prune;
      split(positives, negatives, grow, prune);

      auto literals = grow_rule(grow);
      if (!prune.empty()) literals = prune_rule(std::move(literals), prune);
      NumericalRule rule = to_rule(literals);

      std::size_t p = 0;
      std::size_t n = 0;
      for (RowIndex i : positives) p += covers(rule, i);
      for (RowIndex i : negatives) n += covers(rule, i);
      if (p == 0 || growth_rate(p, n) < config_.g_min) break;

      std::erase_if(positives, [&](RowIndex i) { return covers(rule, i); });
      rules.push_back(std::move(rule));
    }
    return rules;
  }

 private:
  bool is_positive(RowIndex i) const {
    return table_.rows()[i].label == Label::Positive;
  }
  Time value(RowIndex i, std::size_t attribute) const {
    return table_.rows()[i].values[attribute];
  }
  bool covers(const NumericalRule& rule, RowIndex i) const {
    return rule.covers(table_.rows()[i].values);
  }

  static NumericalRule to_rule(const std::vector<Literal>& literals,
                               std::size_t length) {
    NumericalRule rule;
    for (std::size_t k = 0; k < length; ++k) {
      rule.restrict(literals[k].as_condition());
    }
    return rule;
  }
  static NumericalRule to_rule(const std::vector<Literal>& literals) {
    return to_rule(literals, literals.size());
  }

  // Rows of one sid stay on the same side; sids are shuffled per label and
  // assigned to the grow side until it holds grow_fraction of the label's
  // rows. Small inputs are grown on entirely and not pruned.
  void split(const std::vector<RowIndex>& positives,
             const std::vector<RowIndex>& negatives,
             std::vector<RowIndex>& grow, std::vector<RowIndex>& prune) {
    auto groups = [&](const std::vector<RowIndex>& rows) {
      std::vector<std::vector<RowIndex>> out;
      std::vector<std::size_t> slot(sid_count_, kNoSlot);
      for (RowIndex i : rows) {
        auto& k = slot[sid_of_[i]];
        if (k == kNoSlot) {
          k = out.size();
          out.emplace_back();
        }
        out[k].push_back(i);
      }
      return out;
    };
    auto pos_groups = groups(positives);
    auto neg_groups = groups(negatives);
    const bool split_ok = config_.prune &&
                          positives.size() + negatives.size() >=
                              config_.min_rows_for_pruning &&
                          pos_groups.size() >= 2 && neg_groups.size() >= 2;
    if (!split_ok) {
      grow = positives;
      grow.insert(grow.end(), negatives.begin(), negatives.end());
      return;
    }

    auto assign = [&](std::vector<std::vector<RowIndex>>& gs, std::size_t total) {
      std::shuffle(gs.begin(), gs.end(), rng_);
      const double target = config_.grow_fraction * static_cast<double>(total);
      std::size_t in_grow = 0;
      std::size_t grow_groups = 0;
      for (std::size_t g = 0; g < gs.size(); ++g) {
        // The last group always lands on the prune side.
        const bool to_grow = g + 1 < gs.size() &&
                             (grow_groups == 0 ||
                              static_cast<double>(in_grow) < target);
        auto& side = to_grow ? grow : prune;
        side.insert(side.end(), gs[g].begin(), gs[g].end());
        if (to_grow) {
          in_grow += gs[g].size();
          ++grow_groups;
        }
      }
    };
    assign(pos_groups, positives.size());
    assign(neg_groups, negatives.size());
  }

  // Adds the literal with the best FOIL gain until no negative row is
  // covered or no literal improves.
  std::vector<Literal> grow_rule(std::vector<RowIndex> covered) {
    std::vector<Literal> literals;
    while (true) {
      std::size_t p0 = 0;
      for (RowIndex i : covered) p0 += is_positive(i);
      const std::size_t n0 = covered.size() - p0;
      if (n0 == 0 || p0 == 0) break;

      auto best = best_literal(covered, p0, n0);
      if (!best || best->gain <= 0.0) break;
      literals.push_back(best->literal);
      const Condition c = best->literal.as_condition();
      std::erase_if(covered, [&](RowIndex i) {
        const Time v = value(i, c.attribute);
        return !(v >= c.lower && v <= c.upper);
      });
    }
    return literals;
  }

  double foil_gain(std::size_t p0, std::size_t n0, std::size_t p1,
                   std::size_t n1) const {
    if (p1 == 0) return 0.0;
    const double before = log2_[p0] - log2_[p0 + n0];
    const double after = log2_[p1] - log2_[p1 + n1];
    return static_cast<double>(p1) * (after - before);
  }

  // Better: higher gain, then more positives, then smaller attribute name,
  // then smaller threshold, then <= before >=.
  bool better(const Candidate& a, const Candidate& b) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(b.gain));
    if (a.gain > b.gain + tol) return true;
    if (a.gain < b.gain - tol) return false;
    if (a.positives != b.positives) return a.positives > b.positives;
    const auto& na = table_.attribute_name(a.literal.attribute);
    const auto& nb = table_.attribute_name(b.literal.attribute);
    if (na != nb) return na < nb;
    if (a.literal.attribute != b.literal.attribute) {
      return a.literal.attribute < b.literal.attribute;
    }
    if (a.literal.threshold != b.literal.threshold) {
      return a.literal.threshold < b.literal.threshold;
    }
    return a.literal.upper && !b.literal.upper;
  }

  // Cut points lie between consecutive distinct values of the covered rows.
  // The threshold is snapped to the value on the kept side, so a literal
  // `<= v` or `>= v` always names an observed duration.
  std::optional<Candidate> best_literal(const std::vector<RowIndex>& covered,
                                        std::size_t p0, std::size_t n0) const {
    std::optional<Candidate> best;
    auto offer = [&](const Candidate& c) {
      if (!best || better(c, *best)) best = c;
    };
    std::vector<char> in(table_.rows().size(), 0);
    for (RowIndex i : covered) in[i] = 1;
    std::vector<RowIndex> order;
    order.reserve(covered.size());
    for (std::size_t a = 0; a < table_.attribute_count(); ++a) {
      order.clear();
      for (RowIndex i : by_value_[a]) {
        if (in[i]) order.push_back(i);
      }
      std::size_t pos_below = 0;
      std::size_t neg_below = 0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        (is_positive(order[k]) ? pos_below : neg_below) += 1;
        const Time here = value(order[k], a);
        const Time next = value(order[k + 1], a);
        if (here == next) continue;
        const std::size_t pos_above = p0 - pos_below;
        const std::size_t neg_above = n0 - neg_below;
        if (pos_below > 0) {
          offer({{a, true, here}, foil_gain(p0, n0, pos_below, neg_below),
                 pos_below});
        }
        if (pos_above > 0) {
          offer({{a, false, next}, foil_gain(p0, n0, pos_above, neg_above),
                 pos_above});
        }
      }
    }
    return best;
  }

  // Keeps the prefix of literals maximising (p - n) / (p + n) on the prune
  // rows; ties go to the shorter prefix.
  std::vector<Literal> prune_rule(std::vector<Literal> literals,
                                  const std::vector<RowIndex>& prune) const {
    if (literals.size() <= 1) return literals;
    std::size_t best_len = literals.size();
    double best_value = -2.0;
    for (std::size_t len = 1; len <= literals.size(); ++len) {
      NumericalRule rule = to_rule(literals, len);
      std::size_t p = 0;
      std::size_t n = 0;
      for (RowIndex i : prune) {
        if (covers(rule, i)) (is_positive(i) ? p : n) += 1;
      }
      if (p + n == 0) continue;
      const double v = (double(p) - double(n)) / double(p + n);
      if (v > best_value + 1e-12) {
        best_value = v;
        best_len = len;
      }
    }
    literals.resize(best_len);
    return literals;
  }

  const DurationTable& table_;
  const RuleLearnerConfig& config_;
  std::mt19937_64 rng_;
  static constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();
  std::vector<double> log2_;
  std::vector<std::size_t> sid_of_;
  std::size_t sid_count_ = 0;
  std::vector<std::vector<RowIndex>> by_value_;
};

}  // namespace

std::vector<NumericalRule> induce_rules(const DurationTable& table,
                                        const RuleLearnerConfig& config) {
  return RuleInducer(table, config).run();
}

Chronicle translate(const NumericalRule& rule, const Multiset& multiset) {
  const auto pairs = item_pairs(multiset.size());
  std::vector<TemporalConstraint> constraints;
  for (const auto& c : rule.conditions()) {
    if (c.attribute >= pairs.size()) {
      throw std::invalid_argument("rule references an attribute outside the multiset");
    }
    if (c.lower == -kInf && c.upper == kInf) continue;
    auto [i, j] = pairs[c.attribute];
    constraints.push_back({i, j, c.lower, c.upper});
  }
  return Chronicle(multiset, std::move(constraints));
}

MinedChronicle reevaluate(const Chronicle& c, const SequenceDataset& dataset) {
  ChronicleMatcher matcher(c, dataset.alphabet());
  return MinedChronicle::with_supports(c, matcher.support(dataset.positives()),
                                       matcher.support(dataset.negatives()));
}

}  // namespace chronomine
