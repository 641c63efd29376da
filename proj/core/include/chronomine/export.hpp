#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chronomine/model.hpp"

namespace chronomine {

enum class OutputFormat { Json, Csv, Dot };

/// "json", "csv" or "dot"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(std::string_view name);

/// JSON array of
///   {"items": [..], "constraints": [{"from","to","lower","upper"}],
///    "supp_pos", "supp_neg", "growth"}
/// Infinite bounds and an infinite growth rate are written as null.
std::string to_json(std::span<const MinedChronicle> results);

/// Header "items,constraints,supp_pos,supp_neg,growth". Items are joined by
/// ';', constraints written as "i-j:[lower,upper]" joined by ';'.
std::string to_csv(std::span<const MinedChronicle> results);

/// One digraph per chronicle: a node per item labeled by its event type and
/// an edge "[a,b]" per constraint. Missing edges mean unconstrained.
std::string to_dot(std::span<const MinedChronicle> results);

std::string render(std::span<const MinedChronicle> results, OutputFormat format);

/// Reads chronicles from a JSON array (or a single object) using the output
/// schema; support fields are ignored. Items need not be sorted, positions
/// are remapped. Throws InputError on schema violations.
std::vector<Chronicle> parse_chronicles_json(std::string_view text);

/// Same object layout, one chronicle.
Chronicle parse_chronicle_json(std::string_view text);

}  // namespace chronomine
