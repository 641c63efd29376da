#include "chronomine/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace chronomine {

char label_symbol(Label label) { return label == Label::Positive ? '+' : '-'; }

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

std::optional<EventId> Alphabet::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<EventId>(it - names_.begin());
}

Sequence::Sequence(std::string sid, Label label, std::vector<RawEvent> events,
                   std::shared_ptr<const Alphabet> alphabet)
    : sid_(std::move(sid)), label_(label), alphabet_(std::move(alphabet)) {
  events_.reserve(events.size());
  for (const auto& e : events) {
    auto id = alphabet_->find(e.type);
    if (!id) {
      throw std::invalid_argument("event type '" + e.type +
                                  "' is not in the alphabet (sequence " + sid_ +
                                  ")");
    }
    events_.push_back({*id, e.timestamp});
  }
  // Order: timestamp, then event type; identical events keep input order.
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) {
                     return std::tie(a.timestamp, a.type) <
                            std::tie(b.timestamp, b.type);
                   });

  std::vector<std::uint32_t> order(events_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [this](std::uint32_t a, std::uint32_t b) {
                     return events_[a].type < events_[b].type;
                   });
  positions_ = std::move(order);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    EventId t = events_[positions_[i]].type;
    if (types_.empty() || types_.back() != t) {
      types_.push_back(t);
      bucket_start_.push_back(static_cast<std::uint32_t>(i));
    }
  }
  bucket_start_.push_back(static_cast<std::uint32_t>(positions_.size()));
}

std::span<const std::uint32_t> Sequence::positions_of(EventId type) const {
  auto it = std::lower_bound(types_.begin(), types_.end(), type);
  if (it == types_.end() || *it != type) return {};
  auto k = static_cast<std::size_t>(it - types_.begin());
  return std::span<const std::uint32_t>(positions_)
      .subspan(bucket_start_[k], bucket_start_[k + 1] - bucket_start_[k]);
}

SequenceDataset SequenceDataset::from_raw(std::vector<RawSequence> sequences) {
  std::vector<std::string> names;
  std::unordered_set<std::string> sids;
  for (const auto& s : sequences) {
    if (!sids.insert(s.sid).second) {
      throw std::invalid_argument("duplicate sequence id '" + s.sid + "'");
    }
    for (const auto& e : s.events) names.push_back(e.type);
  }
  SequenceDataset ds;
  auto alphabet = std::make_shared<const Alphabet>(std::move(names));
  ds.alphabet_ = alphabet;
  for (auto& s : sequences) {
    auto& target = s.label == Label::Positive ? ds.positives_ : ds.negatives_;
    target.emplace_back(std::move(s.sid), s.label, std::move(s.events), alphabet);
  }
  return ds;
}

std::vector<RawSequence> SequenceDataset::to_raw() const {
  std::vector<RawSequence> out;
  out.reserve(size());
  for (auto set : {positives(), negatives()}) {
    for (const auto& s : set) {
      RawSequence r{s.sid(), s.label(), {}};
      for (const auto& e : s.events()) {
        r.events.push_back({alphabet_->name(e.type), e.timestamp});
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool satisfies(const TemporalConstraint& c, Time t_from, Time t_to) {
  const Time d = t_to - t_from;
  return d >= c.lower && d <= c.upper;
}

Chronicle::Chronicle(std::vector<std::string> items,
                     std::vector<TemporalConstraint> constraints)
    : items_(std::move(items)) {
  if (!std::is_sorted(items_.begin(), items_.end())) {
    throw std::invalid_argument("chronicle items must be sorted");
  }
  for (auto c : constraints) {
    if (c.from >= items_.size() || c.to >= items_.size()) {
      throw std::invalid_argument("constraint references a missing item");
    }
    if (c.from == c.to) {
      throw std::invalid_argument("constraint relates an item to itself");
    }
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper) {
      throw std::invalid_argument("constraint interval is empty");
    }
    if (c.from > c.to) {
      c = TemporalConstraint{c.to, c.from, -c.upper, -c.lower};
    }
    constraints_.push_back(c);
  }
  std::sort(constraints_.begin(), constraints_.end(),
            [](const TemporalConstraint& a, const TemporalConstraint& b) {
              return std::tie(a.from, a.to) < std::tie(b.from, b.to);
            });
  for (std::size_t i = 1; i < constraints_.size(); ++i) {
    if (constraints_[i].from == constraints_[i - 1].from &&
        constraints_[i].to == constraints_[i - 1].to) {
      throw std::invalid_argument("more than one constraint on item pair (" +
                                  std::to_string(constraints_[i].from) + "," +
                                  std::to_string(constraints_[i].to) + ")");
    }
  }
}

std::optional<TemporalConstraint> Chronicle::constraint(std::size_t from,
                                                        std::size_t to) const {
  for (const auto& c : constraints_) {
    if (c.from == from && c.to == to) return c;
  }
  return std::nullopt;
}

bool operator<(const Chronicle& a, const Chronicle& b) {
  if (a.items_ != b.items_) return a.items_ < b.items_;
  auto key = [](const TemporalConstraint& c) {
    return std::tie(c.from, c.to, c.lower, c.upper);
  };
  return std::lexicographical_compare(
      a.constraints_.begin(), a.constraints_.end(), b.constraints_.begin(),
      b.constraints_.end(),
      [&](const auto& x, const auto& y) { return key(x) < key(y); });
}

double growth_rate(std::size_t supp_pos, std::size_t supp_neg) {
  if (supp_neg == 0) return kInf;
  return static_cast<double>(supp_pos) / static_cast<double>(supp_neg);
}

MinedChronicle MinedChronicle::with_supports(Chronicle chronicle,
                                             std::size_t supp_pos,
                                             std::size_t supp_neg) {
  return {std::move(chronicle), supp_pos, supp_neg,
          growth_rate(supp_pos, supp_neg)};
}

bool is_discriminant(std::size_t supp_pos, std::size_t supp_neg,
                     std::size_t sigma_min, double g_min) {
  return supp_pos >= sigma_min &&
         static_cast<double>(supp_pos) >= g_min * static_cast<double>(supp_neg);
}

bool is_discriminant(const MinedChronicle& m, std::size_t sigma_min,
                     double g_min) {
  return is_discriminant(m.supp_pos, m.supp_neg, sigma_min, g_min);
}

std::string format_time(Time t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, end);
}

std::string to_string(const Chronicle& c) {
  std::string out = "{{";
  for (std::size_t i = 0; i < c.items().size(); ++i) {
    if (i) out += ',';
    out += c.items()[i];
  }
  out += "}}";
  for (const auto& k : c.constraints()) {
    out += ' ';
    out += c.items()[k.from] + "#" + std::to_string(k.from);
    out += "[" + format_time(k.lower) + "," + format_time(k.upper) + "]";
    out += c.items()[k.to] + "#" + std::to_string(k.to);
  }
  return out;
}

}  // namespace chronomine
