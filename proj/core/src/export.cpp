#include "chronomine/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chronomine/io.hpp"

namespace chronomine {

using nlohmann::json;

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "dot") return OutputFormat::Dot;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected json, csv or dot)");
}

namespace {

json number_or_null(double v) {
  if (std::isinf(v)) return nullptr;
  if (v == std::trunc(v) && std::abs(v) < 9007199254740992.0) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

json chronicle_json(const MinedChronicle& m) {
  json constraints = json::array();
  for (const auto& c : m.chronicle.constraints()) {
    constraints.push_back({{"from", c.from},
                           {"to", c.to},
                           {"lower", number_or_null(c.lower)},
                           {"upper", number_or_null(c.upper)}});
  }
  return {{"items", m.chronicle.items()},
          {"constraints", std::move(constraints)},
          {"supp_pos", m.supp_pos},
          {"supp_neg", m.supp_neg},
          {"growth", number_or_null(m.growth)}};
}

std::string interval(const TemporalConstraint& c) {
  return "[" + format_time(c.lower) + "," + format_time(c.upper) + "]";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

Time bound_from_json(const json& v, Time infinite, const char* field) {
  if (v.is_null()) return infinite;
  if (!v.is_number()) {
    throw InputError(std::string("constraint field '") + field +
                     "' must be a number or null");
  }
  return v.get<double>();
}

Chronicle chronicle_from_json(const json& obj) {
  if (!obj.is_object()) throw InputError("chronicle must be a JSON object");
  if (!obj.contains("items") || !obj["items"].is_array()) {
    throw InputError("chronicle needs an 'items' array");
  }
  std::vector<std::string> items;
  for (const auto& it : obj["items"]) {
    if (!it.is_string()) throw InputError("items must be strings");
    items.push_back(it.get<std::string>());
  }
  // Sort items and remap constraint positions accordingly.
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
  std::vector<std::size_t> position(items.size());
  std::vector<std::string> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    position[order[k]] = k;
    sorted.push_back(items[order[k]]);
  }

  std::vector<TemporalConstraint> constraints;
  if (obj.contains("constraints")) {
    const auto& cs = obj["constraints"];
    if (!cs.is_array()) throw InputError("'constraints' must be an array");
    for (const auto& c : cs) {
      if (!c.is_object() || !c.contains("from") || !c.contains("to") ||
          !c["from"].is_number_unsigned() || !c["to"].is_number_unsigned()) {
        throw InputError("constraint needs unsigned 'from' and 'to'");
      }
      const auto from = c["from"].get<std::size_t>();
      const auto to = c["to"].get<std::size_t>();
      if (from >= items.size() || to >= items.size()) {
        throw InputError("constraint references a missing item");
      }
      constraints.push_back(
          {position[from], position[to],
           bound_from_json(c.value("lower", json()), -kInf, "lower"),
           bound_from_json(c.value("upper", json()), kInf, "upper")});
    }
  }
  try {
    return Chronicle(std::move(sorted), std::move(constraints));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(std::span<const MinedChronicle> results) {
  json out = json::array();
  for (const auto& m : results) out.push_back(chronicle_json(m));
  return out.dump(2);
}

std::string to_csv(std::span<const MinedChronicle> results) {
  std::ostringstream os;
  os << "items,constraints,supp_pos,supp_neg,growth\n";
  for (const auto& m : results) {
    std::string items;
    for (const auto& item : m.chronicle.items()) {
      if (!items.empty()) items += ';';
      items += item;
    }
    std::string constraints;
    for (const auto& c : m.chronicle.constraints()) {
      if (!constraints.empty()) constraints += ';';
      constraints += std::to_string(c.from) + "-" + std::to_string(c.to) + ":" +
                     interval(c);
    }
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + '"';
    };
    os << quote(items) << ',' << quote(constraints) << ',' << m.supp_pos << ','
       << m.supp_neg << ',' << format_time(m.growth) << '\n';
  }
  return os.str();
}

std::string to_dot(std::span<const MinedChronicle> results) {
  std::ostringstream os;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& m = results[k];
    os << "digraph chronicle_" << k << " {\n";
    os << "  label=\"supp+=" << m.supp_pos << " supp-=" << m.supp_neg
       << " growth=" << format_time(m.growth) << "\";\n";
    const auto& items = m.chronicle.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
      os << "  n" << i << " [label=\"" << dot_escape(items[i]) << "\"];\n";
    }
    for (const auto& c : m.chronicle.constraints()) {
      os << "  n" << c.from << " -> n" << c.to << " [label=\"" << interval(c)
         << "\"];\n";
    }
    os << "}\n";
  }
  return os.str();
}

std::string render(std::span<const MinedChronicle> results, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return to_json(results) + "\n";
    case OutputFormat::Csv:
      return to_csv(results);
    case OutputFormat::Dot:
      return to_dot(results);
  }
  throw std::logic_error("unhandled output format");
}

std::vector<Chronicle> parse_chronicles_json(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<Chronicle> out;
  if (doc.is_array()) {
    for (const auto& obj : doc) out.push_back(chronicle_from_json(obj));
  } else {
    out.push_back(chronicle_from_json(doc));
  }
  return out;
}

Chronicle parse_chronicle_json(std::string_view text) {
  return chronicle_from_json(parse_json(text));
}

}  // namespace chronomine
