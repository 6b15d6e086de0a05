#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bittp/metrics.hpp"

namespace bittp {

/// One solution row of a front file, exactly as stored on disk (already
/// converted to 0-based indices).
struct FrontRecord {
    Phenotype phenotype;
    Evaluation eval;
};

/// Text front format, one record per solution:
///   line 1: the tour, 1-based city indices, space-separated
///   line 2: picked item indices, 1-based ascending (empty when none)
///   line 3: "<time> <profit>" with time at 6 decimals
/// followed by one blank line. Records appear in archive order (ascending
/// time, phenotypes in lexicographic order), so identical fronts serialize
/// byte-identically.
void write_front_text(std::ostream& out, const FrontArchive& front);
std::vector<FrontRecord> read_front_text(std::istream& in);

/// JSON mirror of the text format: {"front": [{"tour": [...], "items": [...],
/// "time": t, "profit": p}, ...]} plus whatever manifest object the caller
/// supplies (serialized separately by the CLI).
std::string front_to_json(const FrontArchive& front);
std::vector<FrontRecord> read_front_json(std::istream& in);

/// Reads either format, sniffing the first non-space character.
std::vector<FrontRecord> read_front_file(const std::string& path);

/// Rebuild an archive from raw records: filters to the non-dominated subset.
/// `dropped` (optional) reports how many records a strict front would reject.
FrontArchive archive_from_records(const std::vector<FrontRecord>& records,
                                  std::size_t* dropped = nullptr);

/// Fixed-point time rendering used across all outputs (6 decimals).
std::string format_time(double t);

}  // namespace bittp
