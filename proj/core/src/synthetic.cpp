#include "chronomine/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "chronomine/export.hpp"
#include "chronomine/io.hpp"

namespace chronomine {

void SyntheticSpec::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  probability(p_pos, "p_pos");
  probability(p_neg, "p_neg");
  if (!(horizon >= 0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be a finite value >= 0");
  }
  if (noise_events > 0 && noise_types.empty()) {
    throw std::invalid_argument("noise events need at least one noise type");
  }
  for (const auto& t : noise_types) {
    if (t.empty()) throw std::invalid_argument("empty noise type");
  }
}

SyntheticSpec parse_synthetic_spec(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("synthetic spec must be an object");
  SyntheticSpec spec;
  try {
    spec.positives = doc.value("positives", spec.positives);
    spec.negatives = doc.value("negatives", spec.negatives);
    spec.p_pos = doc.value("p_pos", spec.p_pos);
    spec.p_neg = doc.value("p_neg", spec.p_neg);
    spec.noise_types = doc.value("noise_types", spec.noise_types);
    spec.noise_events = doc.value("noise_events", spec.noise_events);
    spec.horizon = doc.value("horizon", spec.horizon);
  } catch (const json::exception& e) {
    throw InputError(std::string("synthetic spec: ") + e.what());
  }
  if (doc.contains("planted")) {
    spec.planted = parse_chronicle_json(doc["planted"].dump());
  }
  spec.validate();
  return spec;
}

std::vector<std::vector<Time>> minimal_network(const Chronicle& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<Time>> d(n, std::vector<Time>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& k : c.constraints()) {
    d[k.from][k.to] = std::min(d[k.from][k.to], std::floor(k.upper));
    d[k.to][k.from] = std::min(d[k.to][k.from], -std::ceil(k.lower));
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] < 0) return {};
  }
  return d;
}

namespace {

Time uniform_int(std::mt19937_64& rng, Time lo, Time hi) {
  std::uniform_int_distribution<long long> dist(static_cast<long long>(lo),
                                                static_cast<long long>(hi));
  return static_cast<Time>(dist(rng));
}

// Places the items one by one. On a minimal network every partial
// assignment taken inside the current windows extends to a full one.
std::vector<Time> sample_occurrence(const std::vector<std::vector<Time>>& d,
                                    Time horizon, std::mt19937_64& rng) {
  const std::size_t n = d.size();
  std::vector<Time> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    Time lo = -kInf;
    Time hi = kInf;
    for (std::size_t i = 0; i < k; ++i) {
      lo = std::max(lo, t[i] - d[k][i]);
      hi = std::min(hi, t[i] + d[i][k]);
    }
    if (std::isinf(lo) && std::isinf(hi)) {
      lo = 0;
      hi = std::floor(horizon);
    } else if (std::isinf(lo)) {
      lo = hi - std::floor(horizon);
    } else if (std::isinf(hi)) {
      hi = lo + std::floor(horizon);
    }
    t[k] = uniform_int(rng, lo, hi);
  }
  return t;
}

}  // namespace

std::vector<RawSequence> generate_synthetic(const SyntheticSpec& spec,
                                            std::uint64_t seed) {
  spec.validate();
  const auto network = minimal_network(spec.planted);
  if (spec.planted.size() > 0 && network.empty()) {
    throw std::invalid_argument("planted constraints are infeasible");
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution plant_pos(spec.p_pos);
  std::bernoulli_distribution plant_neg(spec.p_neg);
  std::uniform_int_distribution<std::size_t> noise_type(
      0, spec.noise_types.empty() ? 0 : spec.noise_types.size() - 1);

  std::vector<RawSequence> out;
  out.reserve(spec.positives + spec.negatives);
  auto make = [&](Label label, std::size_t index) {
    const bool positive = label == Label::Positive;
    RawSequence s{(positive ? "pos-" : "neg-") + std::to_string(index), label, {}};
    for (std::size_t k = 0; k < spec.noise_events; ++k) {
      const auto& type = spec.noise_types[noise_type(rng)];
      s.events.push_back({type, uniform_int(rng, 0, std::floor(spec.horizon))});
    }
    const bool plant = positive ? plant_pos(rng) : plant_neg(rng);
    if (plant && spec.planted.size() > 0) {
      auto times = sample_occurrence(network, spec.horizon, rng);
      for (std::size_t i = 0; i < times.size(); ++i) {
        s.events.push_back({spec.planted.items()[i], times[i]});
      }
    }
    std::sort(s.events.begin(), s.events.end(),
              [](const RawEvent& a, const RawEvent& b) {
                return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                  : a.type < b.type;
              });
    out.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < spec.positives; ++i) make(Label::Positive, i);
  for (std::size_t i = 0; i < spec.negatives; ++i) make(Label::Negative, i);
  return out;
}

SequenceDataset generate_synthetic_dataset(const SyntheticSpec& spec,
                                           std::uint64_t seed) {
  return SequenceDataset::from_raw(generate_synthetic(spec, seed));
}

}  // namespace chronomine
