#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chronomine/model.hpp"

namespace chronomine {

/// Malformed or unreadable input. `line` is 1-based, 0 when not tied to a
/// line.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Splits one CSV record. Double-quoted fields may hold commas and "" for a
/// literal quote.
std::vector<std::string> split_csv_record(const std::string& line);

/// Reads "sid,event,timestamp,label" rows; label is "+" or "-" and constant
/// per sid. Sequences keep the order in which their sid first appears.
SequenceDataset read_dataset_csv(std::istream& in);
SequenceDataset load_csv(const std::filesystem::path& path);

void write_dataset_csv(std::ostream& out, const SequenceDataset& dataset);
void write_dataset_csv(std::ostream& out, const std::vector<RawSequence>& sequences);

/// Unlabeled timelines, "sid,event,timestamp" (a label column is allowed and
/// ignored).
struct Timeline {
  std::string sid;
  std::vector<RawEvent> events;
};
std::vector<Timeline> read_timelines_csv(std::istream& in);

/// Parses a decimal timestamp; throws InputError on failure.
Time parse_time(const std::string& text, std::size_t line);

}  // namespace chronomine
