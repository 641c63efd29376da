#include "chronomine/occurrence.hpp"

#include <algorithm>
#include <cmath>

namespace chronomine {

namespace {

// Candidate windows are located by binary search on t_k + bound, which can
// round differently from the t_i - t_k test in satisfies(). Widen the search
// by a few ulps worth and keep satisfies() as the exact check.
Time widen_down(Time x) { return x - 1e-9 * (1.0 + std::abs(x)); }
Time widen_up(Time x) { return x + 1e-9 * (1.0 + std::abs(x)); }

}  // namespace

ChronicleMatcher::ChronicleMatcher(const Chronicle& chronicle,
                                   const Alphabet& alphabet) {
  const auto& names = chronicle.items();
  items_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto id = alphabet.find(names[i]);
    if (!id) resolvable_ = false;
    items_.push_back(
        {id.value_or(0), i > 0 && names[i] == names[i - 1], {}});
  }
  for (const auto& c : chronicle.constraints()) {
    items_[c.to].bounds.push_back({c.from, c.lower, c.upper});
  }
}

template <typename Visit>
bool ChronicleMatcher::search(const Sequence& s, std::size_t depth,
                              std::vector<std::uint32_t>& mapping,
                              Visit& visit) const {
  if (depth == items_.size()) return visit(mapping);

  const Item& item = items_[depth];
  const auto events = s.events();
  Time lo = -kInf;
  Time hi = kInf;
  for (const auto& b : item.bounds) {
    const Time t = events[mapping[b.from]].timestamp;
    lo = std::max(lo, widen_down(t + b.lower));
    hi = std::min(hi, widen_up(t + b.upper));
  }
  if (lo > hi) return false;

  auto candidates = s.positions_of(item.type);
  auto first = candidates.begin();
  if (item.same_as_previous) {
    first = std::upper_bound(first, candidates.end(), mapping[depth - 1]);
  }
  if (lo > -kInf) {
    first = std::lower_bound(first, candidates.end(), lo,
                             [&](std::uint32_t pos, Time value) {
                               return events[pos].timestamp < value;
                             });
  }
  for (auto it = first; it != candidates.end(); ++it) {
    const Time t = events[*it].timestamp;
    if (t > hi) break;
    bool ok = true;
    for (const auto& b : item.bounds) {
      if (!satisfies({b.from, depth, b.lower, b.upper},
                     events[mapping[b.from]].timestamp, t)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    mapping[depth] = *it;
    if (search(s, depth + 1, mapping, visit)) return true;
  }
  return false;
}

bool ChronicleMatcher::occurs(const Sequence& s) const {
  if (!resolvable_) return false;
  std::vector<std::uint32_t> mapping(items_.size());
  auto stop_at_first = [](const std::vector<std::uint32_t>&) { return true; };
  return search(s, 0, mapping, stop_at_first);
}

bool ChronicleMatcher::for_each(
    const Sequence& s, std::size_t cap,
    const std::function<void(std::span<const std::uint32_t>)>& visit) const {
  if (!resolvable_) return false;
  std::vector<std::uint32_t> mapping(items_.size());
  std::size_t count = 0;
  bool truncated = false;
  auto collect = [&](const std::vector<std::uint32_t>& m) {
    if (count == cap) {
      truncated = true;
      return true;
    }
    ++count;
    visit(m);
    return false;
  };
  search(s, 0, mapping, collect);
  return truncated;
}

OccurrenceList ChronicleMatcher::enumerate(const Sequence& s,
                                           std::size_t cap) const {
  OccurrenceList out;
  const auto events = s.events();
  out.truncated = for_each(s, cap, [&](std::span<const std::uint32_t> m) {
    Occurrence occ{s.sid(), {m.begin(), m.end()}, {}};
    occ.timestamps.reserve(m.size());
    for (auto pos : m) occ.timestamps.push_back(events[pos].timestamp);
    out.occurrences.push_back(std::move(occ));
  });
  return out;
}

std::size_t ChronicleMatcher::support(
    std::span<const Sequence> sequences) const {
  return static_cast<std::size_t>(std::count_if(
      sequences.begin(), sequences.end(),
      [this](const Sequence& s) { return occurs(s); }));
}

OccurrenceList enumerate_occurrences(const Chronicle& c, const Sequence& s,
                                     std::size_t cap) {
  return ChronicleMatcher(c, s.alphabet()).enumerate(s, cap);
}

bool occurs(const Chronicle& c, const Sequence& s) {
  return ChronicleMatcher(c, s.alphabet()).occurs(s);
}

std::size_t support(const Chronicle& c, std::span<const Sequence> sequences) {
  if (sequences.empty()) return 0;
  return ChronicleMatcher(c, sequences.front().alphabet()).support(sequences);
}

}  // namespace chronomine
