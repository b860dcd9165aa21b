#include "noisyevo/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace noisyevo {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (value == std::floor(value) && std::abs(value) < 9.007199254740992e15) {
    const auto as_int = static_cast<std::int64_t>(value);
    char buf[24];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, as_int);
    return std::string(buf, ptr);
  }
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i - 1].x <= rows[i].x))
      throw std::invalid_argument(
          "format_summary_table: rows must be sorted ascending by x");
  std::string out = "x med lq uq\n";
  for (const auto& row : rows) {
    if (!row.has_quantiles()) {
      out += "# x=" + format_number(row.x) + " hits=0/" +
             std::to_string(row.runs) + "\n";
    }
    out += format_number(row.x) + " " + format_number(row.med) + " " +
           format_number(row.lq) + " " + format_number(row.uq) + "\n";
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_summary_table(const std::vector<SummaryRow>& rows,
                         const std::filesystem::path& path) {
  write_file(path, format_summary_table(rows));
}

std::string format_raw_csv(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const RunRecord* a, const RunRecord* b) {
              return a->run_index < b->run_index;
            });
  std::string out = "run,seed,hit,evals_at_hit,evals_total,param\n";
  for (const RunRecord* r : sorted) {
    out += std::to_string(r->run_index);
    out += ',';
    out += std::to_string(r->seed);
    out += ',';
    out += r->hit ? '1' : '0';
    out += ',';
    if (r->hit) out += std::to_string(r->evals_at_hit);
    out += ',';
    out += std::to_string(r->evals_total);
    out += ',';
    out += format_number(r->param);
    out += '\n';
  }
  return out;
}

void export_raw(const std::vector<RunRecord>& records,
                const std::filesystem::path& path) {
  write_file(path, format_raw_csv(records));
}

std::vector<RunRecord> parse_raw_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "run,seed,hit,evals_at_hit,evals_total,param")
    throw std::invalid_argument("parse_raw_csv: bad header");
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 6)
      throw std::invalid_argument("parse_raw_csv: expected 6 fields");
    RunRecord r;
    r.run_index = std::stoi(fields[0]);
    r.seed = std::stoull(fields[1]);
    r.hit = fields[2] == "1";
    r.evals_at_hit = fields[3].empty() ? 0 : std::stoull(fields[3]);
    r.evals_total = std::stoull(fields[4]);
    r.param = std::stod(fields[5]);
    records.push_back(r);
  }
  return records;
}

std::filesystem::path companion_table_path(
    const std::filesystem::path& path) {
  std::filesystem::path companion = path;
  const std::string ext = path.extension().string();
  companion.replace_extension();
  companion += ".k";
  companion += ext;
  return companion;
}

}  // namespace noisyevo
