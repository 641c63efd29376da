#include "chronomine/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <unordered_set>

namespace chronomine {

SupportThreshold SupportThreshold::count(std::size_t n) {
  if (n < 1) throw std::invalid_argument("minimal support must be >= 1");
  SupportThreshold t;
  t.value_ = static_cast<double>(n);
  return t;
}

SupportThreshold SupportThreshold::fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw std::invalid_argument("support fraction must lie in (0, 1]");
  }
  SupportThreshold t;
  t.is_fraction_ = true;
  t.value_ = f;
  return t;
}

SupportThreshold SupportThreshold::parse(std::string_view text) {
  const bool fractional = text.find_first_of(".eE") != std::string_view::npos;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (fractional) {
    double f = 0;
    auto [end, ec] = std::from_chars(first, last, f);
    if (ec != std::errc{} || end != last) {
      throw std::invalid_argument("invalid support '" + std::string(text) + "'");
    }
    return fraction(f);
  }
  unsigned long long n = 0;
  auto [end, ec] = std::from_chars(first, last, n);
  if (ec != std::errc{} || end != last) {
    throw std::invalid_argument("invalid support '" + std::string(text) + "'");
  }
  return count(static_cast<std::size_t>(n));
}

std::size_t SupportThreshold::resolve(std::size_t positives) const {
  if (!is_fraction_) return static_cast<std::size_t>(value_);
  // Guard against 0.05 * 200 landing on 10.000000000000002.
  const double raw = value_ * static_cast<double>(positives);
  const double rounded = std::round(raw);
  const double n = std::abs(raw - rounded) < 1e-9 ? rounded : std::ceil(raw);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

void DcmConfig::validate() const {
  if (!(g_min >= 1.0)) throw std::invalid_argument("g_min must be >= 1");
  if (min_size > max_size) {
    throw std::invalid_argument("min_size exceeds max_size");
  }
  if (occurrence_cap < 1) {
    throw std::invalid_argument("occurrence cap must be >= 1");
  }
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHRONOMINE_THREADS")) {
    std::size_t cap = 0;
    std::string_view sv(env);
    auto [end, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), cap);
    if (ec == std::errc{} && cap > 0) n = std::min(n, cap);
  }
  return n;
}

namespace {

bool passes_growth(std::size_t supp_pos, std::size_t supp_neg, double g_min,
                   bool strict) {
  const double lhs = static_cast<double>(supp_pos);
  const double rhs = g_min * static_cast<double>(supp_neg);
  return strict ? lhs > rhs : lhs >= rhs;
}

std::uint64_t multiset_seed(std::uint64_t seed, const Multiset& ms) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (const auto& item : ms) {
    for (unsigned char c : item) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

/// Inverted lists from event type to the sequences containing it.
class TypeIndex {
 public:
  TypeIndex(std::span<const Sequence> sequences, std::size_t alphabet_size)
      : sequences_(sequences), lists_(alphabet_size) {
    for (std::uint32_t i = 0; i < sequences.size(); ++i) {
      for (EventId t : sequences[i].distinct_types()) lists_[t].push_back(i);
    }
  }

  /// Sequences holding `ms` as a sub-multiset.
  std::vector<const Sequence*> candidates(const Multiset& ms,
                                          const Alphabet& alphabet) const {
    std::vector<std::uint32_t> acc;
    bool first = true;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i > 0 && ms[i] == ms[i - 1]) continue;
      auto id = alphabet.find(ms[i]);
      if (!id) return {};
      const auto& list = lists_[*id];
      if (first) {
        acc = list;
        first = false;
      } else {
        std::vector<std::uint32_t> next;
        std::set_intersection(acc.begin(), acc.end(), list.begin(), list.end(),
                              std::back_inserter(next));
        acc = std::move(next);
      }
      if (acc.empty()) break;
    }
    std::vector<const Sequence*> out;
    if (first) {
      for (const auto& s : sequences_) out.push_back(&s);
      return out;
    }
    std::vector<std::pair<EventId, std::size_t>> repeated;
    for (std::size_t i = 0; i < ms.size();) {
      std::size_t j = i;
      while (j < ms.size() && ms[j] == ms[i]) ++j;
      if (j - i > 1) repeated.emplace_back(*alphabet.find(ms[i]), j - i);
      i = j;
    }
    out.reserve(acc.size());
    for (auto i : acc) {
      const Sequence& s = sequences_[i];
      if (std::all_of(repeated.begin(), repeated.end(),
                      [&](const auto& r) { return s.count_of(r.first) >= r.second; })) {
        out.push_back(&s);
      }
    }
    return out;
  }

 private:
  std::span<const Sequence> sequences_;
  std::vector<std::vector<std::uint32_t>> lists_;
};

std::size_t count_occurring(const ChronicleMatcher& matcher,
                            const std::vector<const Sequence*>& sequences) {
  return static_cast<std::size_t>(
      std::count_if(sequences.begin(), sequences.end(),
                    [&](const Sequence* s) { return matcher.occurs(*s); }));
}

struct MultisetOutcome {
  std::vector<MinedChronicle> chronicles;
  bool unconstrained = false;
  bool truncated = false;
};

// A sequence contains the translated chronicle iff one of its rows is
// covered, so on a complete table this is the sequence-level support.
std::size_t covered_positive_sids(const DurationTable& table, const NumericalRule& rule) {
  std::unordered_set<std::string_view> sids;
  for (const auto& row : table.rows()) {
    if (row.label == Label::Positive && rule.covers(row.values)) sids.insert(row.sid);
  }
  return sids.size();
}

class Miner {
 public:
  Miner(const SequenceDataset& dataset, const DcmConfig& config,
        std::size_t sigma_min)
      : dataset_(dataset),
        config_(config),
        sigma_min_(sigma_min),
        pos_index_(dataset.positives(), dataset.alphabet().size()),
        neg_index_(dataset.negatives(), dataset.alphabet().size()) {}

  MultisetOutcome process(const Multiset& ms) {
    MultisetOutcome out;
    const auto& alphabet = dataset_.alphabet();
    const auto pos = pos_index_.candidates(ms, alphabet);
    const auto neg = neg_index_.candidates(ms, alphabet);

    const Chronicle bare(ms);
    const std::size_t supp_pos = pos.size();
    const std::size_t supp_neg = neg.size();
    if (passes_growth(supp_pos, supp_neg, config_.g_min,
                      config_.strict_growth)) {
      out.unconstrained = true;
      out.chronicles.push_back(
          MinedChronicle::with_supports(bare, supp_pos, supp_neg));
      return out;
    }
    if (ms.size() < 2) return out;

    std::vector<const Sequence*> all(pos);
    all.insert(all.end(), neg.begin(), neg.end());
    DurationTable table = build_duration_table(ms, all, config_.occurrence_cap);
    out.truncated = table.truncated();
    if (config_.table_sink) {
      std::lock_guard lock(sink_mutex_);
      config_.table_sink(table);
    }
    if (table.count(Label::Positive) == 0) return out;

    RuleLearnerConfig learner = config_.learner;
    learner.g_min = config_.g_min;
    learner.seed = multiset_seed(config_.seed, ms);
    for (const auto& rule : induce_rules(table, learner)) {
      Chronicle c = translate(rule, ms);
      if (std::any_of(out.chronicles.begin(), out.chronicles.end(),
                      [&](const MinedChronicle& m) { return m.chronicle == c; })) {
        continue;
      }
      if (!table.truncated() && covered_positive_sids(table, rule) < sigma_min_) continue;
      ChronicleMatcher matcher(c, alphabet);
      const std::size_t p = count_occurring(matcher, pos);
      const std::size_t n = count_occurring(matcher, neg);
      if (!is_discriminant(p, n, sigma_min_, config_.g_min)) continue;
      out.chronicles.push_back(MinedChronicle::with_supports(std::move(c), p, n));
    }
    return out;
  }

 private:
  const SequenceDataset& dataset_;
  const DcmConfig& config_;
  std::size_t sigma_min_;
  TypeIndex pos_index_;
  TypeIndex neg_index_;
  std::mutex sink_mutex_;
};

bool output_order(const MinedChronicle& a, const MinedChronicle& b) {
  if (a.growth != b.growth) return a.growth > b.growth;
  if (a.supp_pos != b.supp_pos) return a.supp_pos > b.supp_pos;
  return a.chronicle < b.chronicle;
}

}  // namespace

bool check_multiset_discriminancy(const Multiset& ms,
                                  const SequenceDataset& dataset,
                                  const DcmConfig& config) {
  ChronicleMatcher matcher(Chronicle(ms), dataset.alphabet());
  return passes_growth(matcher.support(dataset.positives()),
                       matcher.support(dataset.negatives()), config.g_min,
                       config.strict_growth);
}

DcmResult dcm(const SequenceDataset& dataset, const DcmConfig& config) {
  config.validate();
  if (dataset.positives().empty()) {
    throw std::invalid_argument("no positive sequences");
  }
  const std::size_t sigma_min =
      config.sigma_min.resolve(dataset.positives().size());

  const auto multisets = extract_multisets(dataset.positives(), sigma_min,
                                           std::max<std::size_t>(1, config.min_size),
                                           config.max_size);
  Miner miner(dataset, config, sigma_min);
  std::vector<MultisetOutcome> outcomes(multisets.size());

  const std::size_t workers =
      std::min(worker_count(config.threads), std::max<std::size_t>(1, multisets.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < multisets.size(); i = next++) {
        outcomes[i] = miner.process(multisets[i].items);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = multisets.size();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  DcmResult result;
  result.multisets = multisets.size();
  for (auto& o : outcomes) {
    result.unconstrained += o.unconstrained;
    result.tables_truncated += o.truncated;
    for (auto& c : o.chronicles) result.chronicles.push_back(std::move(c));
  }
  if (result.tables_truncated > 0) {
    result.warnings.push_back(
        std::to_string(result.tables_truncated) +
        " duration table(s) truncated at the occurrence cap of " +
        std::to_string(config.occurrence_cap) + " per sequence");
  }
  std::sort(result.chronicles.begin(), result.chronicles.end(), output_order);
  return result;
}

}  // namespace chronomine
