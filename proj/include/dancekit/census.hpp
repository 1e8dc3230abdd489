#pragma once

// Knot-table ingestion and per-knot danceability reports.
//
// Census file: UTF-8 CSV, header
//   name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial
// pd and braid cells use the codecs grammars; an empty cell means absent.
// Lines starting with '#' before or between rows are comments.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "dancekit/braids.hpp"
#include "dancekit/choreography.hpp"
#include "dancekit/codecs.hpp"
#include "dancekit/diagram.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"
#include "dancekit/json_io.hpp"

namespace dancekit {

struct KnotRecord {
  std::string name;
  std::optional<PDCode> pd;
  std::optional<BraidWord> braid;
  std::optional<int> crossing_number;
  std::optional<int> braid_index;
  std::optional<int> bridge_index;
  std::optional<bool> alternating;
  bool nontrivial = true;
};

inline const std::vector<std::string>& census_columns() {
  static const std::vector<std::string> columns = {
      "name", "pd", "braid", "crossing_number", "braid_index", "bridge_index", "alternating",
      "nontrivial"};
  return columns;
}

namespace detail {

// RFC 4180 records: quoted fields may contain separators, "" escapes a quote.
// Returns false at end of input. `line` receives the 1-based starting line.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line,
                            std::size_t& line_counter) {
  fields.clear();
  std::string raw;
  while (true) {
    if (!std::getline(in, raw)) return false;
    ++line_counter;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    break;
  }
  line = line_counter;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == raw.size()) {
      if (!quoted) break;
      std::string more;
      if (!std::getline(in, more)) throw error(errc::format, "unterminated quote at line " + std::to_string(line));
      ++line_counter;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field += '\n';
      raw = std::move(more);
      i = static_cast<std::size_t>(-1);
      continue;
    }
    const char c = raw[i];
    if (quoted) {
      if (c == '"' && i + 1 < raw.size() && raw[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::optional<int> parse_optional_int(const std::string& cell, const char* column) {
  if (cell.empty()) return std::nullopt;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cell.size()) {
    throw error(errc::format, std::string(column) + " is not an integer: '" + cell + "'");
  }
  return value;
}

inline std::optional<bool> parse_optional_bool(const std::string& cell, const char* column) {
  if (cell.empty()) return std::nullopt;
  std::string v = cell;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "yes" || v == "y" || v == "1") return true;
  if (v == "false" || v == "no" || v == "n" || v == "0") return false;
  throw error(errc::format, std::string(column) + " is not a boolean: '" + cell + "'");
}

inline KnotRecord parse_census_row(const std::vector<std::string>& raw) {
  if (raw.size() != census_columns().size()) {
    throw error(errc::format, "expected " + std::to_string(census_columns().size()) +
                                  " fields, got " + std::to_string(raw.size()));
  }
  std::vector<std::string> f;
  for (const auto& s : raw) f.push_back(trim(s));
  KnotRecord r;
  r.name = f[0];
  if (r.name.empty()) throw error(errc::format, "missing knot name");
  try {
    if (!f[1].empty()) r.pd = parse_pd(f[1]);
    if (!f[2].empty()) r.braid = parse_braid(f[2]);
  } catch (const error& e) {
    throw error(errc::format, r.name + ": " + e.what());
  }
  if (!r.pd && !r.braid) throw error(errc::format, r.name + ": row has neither pd nor braid");
  r.crossing_number = parse_optional_int(f[3], "crossing_number");
  r.braid_index = parse_optional_int(f[4], "braid_index");
  r.bridge_index = parse_optional_int(f[5], "bridge_index");
  r.alternating = parse_optional_bool(f[6], "alternating");
  r.nontrivial = parse_optional_bool(f[7], "nontrivial").value_or(true);
  if (r.braid_index && *r.braid_index < 1) throw error(errc::format, r.name + ": braid_index < 1");
  if (r.bridge_index && *r.bridge_index < 1) throw error(errc::format, r.name + ": bridge_index < 1");
  return r;
}

}  // namespace detail

struct CensusLoad {
  std::vector<KnotRecord> records;
  std::vector<std::string> warnings;  ///< one per skipped row (lenient mode)
};

/// Strict mode throws errc::format on the first bad row; lenient mode skips it
/// with a warning. A wrong header is always fatal.
inline CensusLoad parse_census(std::istream& in, bool strict) {
  CensusLoad out;
  std::vector<std::string> fields;
  std::size_t line = 0;
  std::size_t counter = 0;
  if (!detail::read_csv_record(in, fields, line, counter)) return out;
  for (auto& f : fields) f = detail::trim(f);
  if (fields != census_columns()) {
    throw error(errc::format, "unexpected census header at line " + std::to_string(line));
  }
  while (true) {
    try {
      if (!detail::read_csv_record(in, fields, line, counter)) break;
      out.records.push_back(detail::parse_census_row(fields));
    } catch (const error& e) {
      if (strict) throw error(errc::format, "line " + std::to_string(line) + ": " + e.what());
      out.warnings.push_back("line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

inline CensusLoad load_census(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io, "cannot open census file " + path.string());
  return parse_census(in, strict);
}

enum class CheckStatus { pass, fail, skip };

constexpr const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "skip";
}

struct CheckResult {
  std::string id;
  std::string name;
  CheckStatus status = CheckStatus::skip;
  std::string detail;
};

struct Flag {
  std::string id;
  std::string name;
  std::string detail;
};

/// Danceability data for one knot. `da_lower`..`best_upper` is the interval
/// the knot's danceability is known to lie in; `da_exact` is set when it closes.
struct KnotReport {
  std::string name;
  std::optional<int> pd_crossings;
  std::optional<int> diagram_min;
  std::optional<CutSet> diagram_witness;
  std::optional<bool> diagram_descending;
  std::optional<int> closure_crossings;
  std::optional<int> closure_min;
  std::optional<CutSet> closure_witness;
  std::optional<bool> closure_descending;
  std::optional<int> strand_bound;
  std::optional<int> best_upper;
  int da_lower = 2;
  std::optional<int> da_exact;
  std::optional<int> bridge_sign;  ///< sign of best_upper - bridge_index
  std::vector<CheckResult> checks;
  std::vector<Flag> flags;
  std::vector<std::string> errors;

  const CheckResult* check(const std::string& id) const {
    for (const auto& c : checks) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
  bool has_flag(const std::string& id) const {
    return std::any_of(flags.begin(), flags.end(), [&](const Flag& f) { return f.id == id; });
  }
};

/// Runs every computation the record supports. Sub-computation errors are
/// recorded in `errors` and never escape.
inline KnotReport analyze(const KnotRecord& record) {
  KnotReport row;
  row.name = record.name;
  row.da_lower = record.nontrivial ? 2 : 1;

  if (record.pd) {
    try {
      const auto seq = pd_to_gauss(*record.pd);
      row.pd_crossings = seq.crossing_count();
      const auto best = min_dancers(seq);
      row.diagram_min = best.dancers;
      row.diagram_witness = best.witness;
      row.diagram_descending = is_descending_start(seq).has_value();
    } catch (const error& e) {
      row.errors.push_back(std::string("pd: ") + e.what());
    }
  }

  std::optional<std::string> schedule_problem;
  if (record.braid) {
    try {
      const auto closure = trace_closure(*record.braid);
      row.closure_crossings = closure.sequence.crossing_count();
      const auto best = min_dancers(closure.sequence);
      row.closure_min = best.dancers;
      row.closure_witness = best.witness;
      row.closure_descending = is_descending_start(closure.sequence).has_value();
      const auto schedule = braid_schedule(*record.braid);
      const auto cuts = strand_cuts(*record.braid);
      const auto verdict = verify_schedule(closure.sequence, cuts, schedule);
      if (verdict && static_cast<int>(schedule.dancers.size()) == record.braid->strands) {
        row.strand_bound = record.braid->strands;
      } else {
        schedule_problem = verdict ? "dancer count differs from strand count"
                                   : verdict.violations.front();
      }
    } catch (const std::exception& e) {
      row.errors.push_back(std::string("braid: ") + e.what());
      schedule_problem = e.what();
    }
  }

  for (const auto& bound : {row.diagram_min, row.closure_min, row.strand_bound}) {
    if (bound) row.best_upper = row.best_upper ? std::min(*row.best_upper, *bound) : *bound;
  }
  if (row.best_upper && *row.best_upper == row.da_lower) row.da_exact = row.da_lower;

  auto add_check = [&](const char* id, const char* name, CheckStatus status, std::string detail) {
    row.checks.push_back({id, name, status, std::move(detail)});
  };

  if (row.diagram_min && record.crossing_number) {
    const int bound = std::max(1, *record.crossing_number);
    add_check("C1", "crossing bound",
              *row.diagram_min <= bound ? CheckStatus::pass : CheckStatus::fail,
              "diagram_min " + std::to_string(*row.diagram_min) + " <= " + std::to_string(bound));
  } else {
    add_check("C1", "crossing bound", CheckStatus::skip, "needs pd and crossing_number");
  }

  if (record.braid) {
    const bool ok = row.strand_bound && row.best_upper && *row.best_upper <= *row.strand_bound;
    add_check("C2", "braid bound", ok ? CheckStatus::pass : CheckStatus::fail,
              ok ? "strand schedule verified with " + std::to_string(*row.strand_bound) + " dancers"
                 : "no verified strand schedule: " + schedule_problem.value_or("unknown"));
  } else {
    add_check("C2", "braid bound", CheckStatus::skip, "needs braid");
  }

  const bool any_descending = row.diagram_descending.value_or(false) ||
                              row.closure_descending.value_or(false);
  const bool examined = row.diagram_descending.has_value() || row.closure_descending.has_value();
  if (record.braid_index && *record.braid_index == 2 && record.nontrivial) {
    const bool ok = row.best_upper && *row.best_upper == 2 && !any_descending;
    add_check("C3", "corollary", ok ? CheckStatus::pass : CheckStatus::fail,
              "braid index 2: best_upper " +
                  (row.best_upper ? std::to_string(*row.best_upper) : std::string("n/a")));
    if (ok) row.da_exact = 2;
  } else {
    add_check("C3", "corollary", CheckStatus::skip, "applies to nontrivial braid-index-2 knots");
  }

  if (record.nontrivial && examined) {
    add_check("C4", "unknot consistency", any_descending ? CheckStatus::fail : CheckStatus::pass,
              any_descending ? "a nontrivial diagram has a descending start"
                             : "no examined diagram is 1-danceable");
  } else {
    add_check("C4", "unknot consistency", CheckStatus::skip,
              record.nontrivial ? "no diagram examined" : "trivial knot");
  }

  if (record.braid && record.braid_index && record.braid->strands < *record.braid_index) {
    row.flags.push_back({"MetadataSuspect", "metadata suspect",
                         "braid has " + std::to_string(record.braid->strands) +
                             " strands but braid_index is " + std::to_string(*record.braid_index)});
  }
  if (row.pd_crossings && record.crossing_number && *row.pd_crossings < *record.crossing_number) {
    row.flags.push_back({"MetadataSuspect", "metadata suspect",
                         "pd has fewer crossings than crossing_number"});
  }
  if (row.best_upper) {
    if (record.alternating.value_or(false) && record.braid_index && *record.braid_index >= 3 &&
        *row.best_upper == 2) {
      row.flags.push_back({"F1", "conjecture candidate",
                           "alternating, braid index " + std::to_string(*record.braid_index) +
                               ", danced by 2"});
    }
    if (record.braid_index && *row.best_upper < *record.braid_index) {
      row.flags.push_back({"F2", "strict inequality",
                           "best_upper " + std::to_string(*row.best_upper) + " < braid index " +
                               std::to_string(*record.braid_index)});
    }
    if (record.bridge_index) {
      const int delta = *row.best_upper - *record.bridge_index;
      row.bridge_sign = (delta > 0) - (delta < 0);
      if (delta != 0) {
        row.flags.push_back({"F3", "bridge comparison",
                             "best_upper - bridge_index = " + std::to_string(delta)});
      }
    }
  }
  return row;
}

/// Numeric-aware ordering: "8_2" < "8_10".
inline bool knot_name_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const auto na = a.substr(i, ie - i);
      const auto nb = b.substr(j, je - j);
      const auto sa = na.substr(std::min(na.find_first_not_of('0'), na.size() - 1));
      const auto sb = nb.substr(std::min(nb.find_first_not_of('0'), nb.size() - 1));
      if (sa.size() != sb.size()) return sa.size() < sb.size();
      if (sa != sb) return sa < sb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

struct CensusOptions {
  unsigned jobs = 1;
};

struct CensusSummary {
  std::size_t records = 0;
  std::size_t rows_with_errors = 0;
  std::map<std::string, std::map<std::string, std::size_t>> checks;  ///< id -> status -> count
  std::map<std::string, std::size_t> flags;
  std::size_t check_failures = 0;
};

struct CensusReport {
  std::vector<KnotReport> rows;  ///< sorted by knot name
  CensusSummary summary;
};

inline CensusReport run_census(const std::vector<KnotRecord>& records,
                               const CensusOptions& options = {}) {
  CensusReport report;
  report.rows.resize(records.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(records.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) report.rows[i] = analyze(records[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const KnotReport& a, const KnotReport& b) {
                     return knot_name_less(a.name, b.name);
                   });

  auto& s = report.summary;
  s.records = report.rows.size();
  for (const char* id : {"C1", "C2", "C3", "C4"}) {
    for (auto status : {CheckStatus::pass, CheckStatus::fail, CheckStatus::skip}) {
      s.checks[id][to_string(status)] = 0;
    }
  }
  for (const char* id : {"F1", "F2", "F3", "MetadataSuspect"}) s.flags[id] = 0;
  for (const auto& row : report.rows) {
    if (!row.errors.empty()) ++s.rows_with_errors;
    for (const auto& c : row.checks) {
      ++s.checks[c.id][to_string(c.status)];
      if (c.status == CheckStatus::fail) ++s.check_failures;
    }
    for (const auto& f : row.flags) ++s.flags[f.id];
  }
  return report;
}

namespace detail {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json optional_cuts_json(const std::optional<CutSet>& v) {
  return v ? nlohmann::json(serialize_cuts(*v)) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json report_json(const CensusReport& report) {
  auto j = json_envelope("census");
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    row["name"] = r.name;
    row["pd_crossings"] = detail::optional_json(r.pd_crossings);
    row["diagram_min"] = detail::optional_json(r.diagram_min);
    row["diagram_witness"] = detail::optional_cuts_json(r.diagram_witness);
    row["closure_crossings"] = detail::optional_json(r.closure_crossings);
    row["closure_min"] = detail::optional_json(r.closure_min);
    row["closure_witness"] = detail::optional_cuts_json(r.closure_witness);
    row["strand_bound"] = detail::optional_json(r.strand_bound);
    row["best_upper"] = detail::optional_json(r.best_upper);
    row["da_lower"] = r.da_lower;
    row["da_exact"] = detail::optional_json(r.da_exact);
    row["bridge_sign"] = detail::optional_json(r.bridge_sign);
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"id", c.id}, {"name", c.name}, {"status", to_string(c.status)},
                        {"detail", c.detail}});
    }
    row["checks"] = checks;
    auto flags = nlohmann::json::array();
    for (const auto& f : r.flags) flags.push_back({{"id", f.id}, {"name", f.name}, {"detail", f.detail}});
    row["flags"] = flags;
    row["errors"] = r.errors;
    rows.push_back(row);
  }
  j["knots"] = rows;
  const auto& s = report.summary;
  j["summary"] = {{"records", s.records},
                  {"rows_with_errors", s.rows_with_errors},
                  {"checks", s.checks},
                  {"flags", s.flags},
                  {"check_failures", s.check_failures}};
  return j;
}

inline std::string report_csv(const CensusReport& report) {
  std::ostringstream out;
  out << "name,pd_crossings,diagram_min,closure_min,strand_bound,best_upper,da_lower,da_exact,"
         "bridge_sign,C1,C2,C3,C4,flags,errors\n";
  auto cell = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& r : report.rows) {
    out << r.name << ',' << cell(r.pd_crossings) << ',' << cell(r.diagram_min) << ','
        << cell(r.closure_min) << ',' << cell(r.strand_bound) << ',' << cell(r.best_upper) << ','
        << r.da_lower << ',' << cell(r.da_exact) << ',' << cell(r.bridge_sign);
    for (const char* id : {"C1", "C2", "C3", "C4"}) {
      const auto* c = r.check(id);
      out << ',' << (c ? to_string(c->status) : "skip");
    }
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : " ") + f.id;
    std::string errors;
    for (const auto& e : r.errors) errors += (errors.empty() ? "" : "; ") + e;
    out << ',' << flags << ',' << quote(errors) << '\n';
  }
  return out.str();
}

/// Writes census_report.json and census_report.csv into `dir`.
inline void write_reports(const CensusReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw error(errc::io, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error(errc::io, "cannot write " + path.string());
    out << text;
    if (!out) throw error(errc::io, "write failed for " + path.string());
  };
  write(dir / "census_report.json", report_json(report).dump(2) + "\n");
  write(dir / "census_report.csv", report_csv(report));
}

}  // namespace dancekit
