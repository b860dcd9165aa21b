#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "noisyevo/harness.hpp"

namespace noisyevo {

// Shortest decimal that round-trips the value; integral values print
// without a fractional part, NaN prints as "nan".
std::string format_number(double value);

// Summary table body: header `x med lq uq`, one whitespace-separated row
// per SummaryRow (sorted ascending by x), trailing newline. A row without
// quantiles is preceded by a `#` comment carrying its hit count.
std::string format_summary_table(const std::vector<SummaryRow>& rows);
void write_summary_table(const std::vector<SummaryRow>& rows,
                         const std::filesystem::path& path);

// Raw per-run CSV: header `run,seed,hit,evals_at_hit,evals_total,param`,
// rows sorted by run index, evals_at_hit empty on misses.
std::string format_raw_csv(const std::vector<RunRecord>& records);
void export_raw(const std::vector<RunRecord>& records,
                const std::filesystem::path& path);

// Inverse of format_raw_csv over the serialized fields.
std::vector<RunRecord> parse_raw_csv(const std::string& text);

// Path of the companion K/resample table: inserts ".k" before the
// extension ("cga.dat" -> "cga.k.dat").
std::filesystem::path companion_table_path(const std::filesystem::path& path);

}  // namespace noisyevo
