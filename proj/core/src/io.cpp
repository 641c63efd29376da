#include "chronomine/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace chronomine {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool read_record(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> header_fields(std::istream& in, std::size_t& line_no) {
  std::string line;
  while (read_record(in, line, line_no)) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    for (auto& f : fields) f = trim(f);
    return fields;
  }
  throw InputError("missing header", line_no + 1);
}

Label parse_label(const std::string& text, std::size_t line) {
  if (text == "+" || text == "pos" || text == "positive") return Label::Positive;
  if (text == "-" || text == "neg" || text == "negative" ||
      text == "\xE2\x88\x92") {  // U+2212 minus sign
    return Label::Negative;
  }
  throw InputError("invalid label '" + text + "' (expected + or -)", line);
}

}  // namespace

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

Time parse_time(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double value = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size() ||
      !std::isfinite(value)) {
    throw InputError("invalid timestamp '" + text + "'", line);
  }
  return value;
}

SequenceDataset read_dataset_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto header = header_fields(in, line_no);
  const std::vector<std::string> expected{"sid", "event", "timestamp", "label"};
  if (header != expected) {
    throw InputError("expected header 'sid,event,timestamp,label'", line_no);
  }

  std::vector<RawSequence> sequences;
  std::unordered_map<std::string, std::size_t> by_sid;
  std::string line;
  while (read_record(in, line, line_no)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (fields.size() != 4) {
      throw InputError("expected 4 fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    std::string sid = trim(fields[0]);
    std::string event = trim(fields[1]);
    if (sid.empty()) throw InputError("empty sid", line_no);
    if (event.empty()) throw InputError("empty event type", line_no);
    const Time t = parse_time(fields[2], line_no);
    const Label label = parse_label(trim(fields[3]), line_no);

    auto [it, inserted] = by_sid.try_emplace(sid, sequences.size());
    if (inserted) {
      sequences.push_back({sid, label, {}});
    } else if (sequences[it->second].label != label) {
      throw InputError("inconsistent label for sid '" + sid + "'", line_no);
    }
    sequences[it->second].events.push_back({std::move(event), t});
  }
  return SequenceDataset::from_raw(std::move(sequences));
}

SequenceDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_dataset_csv(in);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_dataset_csv(std::ostream& out,
                       const std::vector<RawSequence>& sequences) {
  out << "sid,event,timestamp,label\n";
  for (const auto& s : sequences) {
    for (const auto& e : s.events) {
      out << csv_field(s.sid) << ',' << csv_field(e.type) << ','
          << format_time(e.timestamp) << ',' << label_symbol(s.label) << '\n';
    }
  }
}

void write_dataset_csv(std::ostream& out, const SequenceDataset& dataset) {
  write_dataset_csv(out, dataset.to_raw());
}

std::vector<Timeline> read_timelines_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto header = header_fields(in, line_no);
  if (header.size() < 3 || header[0] != "sid" || header[1] != "event" ||
      header[2] != "timestamp") {
    throw InputError("expected header 'sid,event,timestamp'", line_no);
  }
  std::vector<Timeline> out;
  std::unordered_map<std::string, std::size_t> by_sid;
  std::string line;
  while (read_record(in, line, line_no)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (fields.size() != header.size()) {
      throw InputError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    std::string sid = trim(fields[0]);
    std::string event = trim(fields[1]);
    if (sid.empty()) throw InputError("empty sid", line_no);
    if (event.empty()) throw InputError("empty event type", line_no);
    const Time t = parse_time(fields[2], line_no);
    auto [it, inserted] = by_sid.try_emplace(sid, out.size());
    if (inserted) out.push_back({sid, {}});
    out[it->second].events.push_back({std::move(event), t});
  }
  return out;
}

}  // namespace chronomine
