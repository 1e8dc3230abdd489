// dancekit: command-line front end.
//
// Exit codes: 0 success / feasible, 1 domain-negative answer (infeasible cuts,
// braid closing to a link, census check failure), 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dancekit/dancekit.hpp"

#ifndef DANCEKIT_BUNDLED_CENSUS
#define DANCEKIT_BUNDLED_CENSUS "data/census.csv"
#endif

namespace {

using namespace dancekit;

constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct InputFlags {
  std::optional<std::string> gauss;
  std::optional<std::string> pd;
  std::optional<std::string> braid;
};

struct Diagram {
  GaussSequence seq;
  std::optional<BraidWord> braid;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* g = cmd->add_option("--gauss", in.gauss, "Gauss sequence, e.g. O1U2O3U1O2U3");
  auto* p = cmd->add_option("--pd", in.pd, "PD code, e.g. \"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\"");
  auto* b = cmd->add_option("--braid", in.braid, "braid word, e.g. \"n=2; 1 1 1\" (uses its closure)");
  g->excludes(p)->excludes(b);
  p->excludes(b);
}

Diagram resolve(const InputFlags& in) {
  if (in.gauss) return {parse_gauss(*in.gauss), std::nullopt};
  if (in.pd) return {pd_to_gauss(parse_pd(*in.pd)), std::nullopt};
  if (in.braid) {
    auto word = parse_braid(*in.braid);
    return {braid_closure(word), word};
  }
  throw error(errc::syntax, "one of --gauss, --pd, --braid is required");
}

std::string join_events(const GaussSequence& seq, const std::vector<std::size_t>& events,
                        const char* sep) {
  std::string out;
  for (std::size_t e : events) out += (out.empty() ? "" : sep) + event_name(seq, e);
  return out;
}

int run_check(const InputFlags& in, const std::string& cuts_text, const std::string& format) {
  const auto d = resolve(in);
  const auto cuts = parse_cuts(cuts_text);
  const auto f = is_feasible(d.seq, cuts);
  if (format == "json") {
    std::cout << feasibility_json(d.seq, cuts, f).dump(2) << '\n';
  } else {
    std::cout << (f ? "feasible" : "infeasible") << '\n';
    std::cout << "cuts: " << serialize_cuts(cuts) << " (" << cuts.dancers() << " dancers)\n";
    if (f) {
      std::cout << "witness: " << join_events(d.seq, f.order, " ") << '\n';
    } else {
      std::cout << "blame cycle: " << join_events(d.seq, f.cycle, " -> ") << '\n';
    }
  }
  return f ? EXIT_SUCCESS : kExitNegative;
}

int run_min(const InputFlags& in, bool oracle, const std::string& format) {
  const auto d = resolve(in);
  const auto strategy = oracle ? SearchStrategy::naive : SearchStrategy::optimized;
  const auto best = min_dancers(d.seq, strategy);
  if (format == "json") {
    auto j = json_envelope("min");
    j["sequence"] = serialize_gauss(d.seq);
    j["crossings"] = d.seq.crossing_count();
    j["min_dancers"] = best.dancers;
    j["witness"] = serialize_cuts(best.witness);
    j["strategy"] = oracle ? "naive" : "optimized";
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "min_dancers: " << best.dancers << '\n';
    std::cout << "witness: " << serialize_cuts(best.witness) << '\n';
  }
  return EXIT_SUCCESS;
}

int run_schedule(const InputFlags& in, const std::optional<std::string>& cuts_text, bool theorem3,
                 const std::string& format) {
  const auto d = resolve(in);
  CutSet cuts;
  DanceSchedule schedule;
  if (theorem3) {
    if (!d.braid) throw error(errc::syntax, "--theorem3 needs --braid");
    cuts = strand_cuts(*d.braid);
    schedule = braid_schedule(*d.braid);
  } else {
    if (!cuts_text) throw error(errc::syntax, "schedule needs --cuts or --theorem3");
    cuts = parse_cuts(*cuts_text);
    schedule = schedule_from_cuts(d.seq, cuts);
  }
  if (format == "json") {
    std::cout << schedule_json(d.seq, cuts, schedule).dump(2) << '\n';
  } else {
    const auto as = format == "svg" ? RenderFormat::SVG : RenderFormat::Text;
    std::cout << render_schedule(d.seq, cuts, schedule, as, d.braid ? &*d.braid : nullptr);
  }
  return EXIT_SUCCESS;
}

int run_census_command(const std::optional<std::string>& file, bool strict,
                       const std::optional<std::string>& out_dir, unsigned jobs,
                       const std::string& format) {
  std::string path = DANCEKIT_BUNDLED_CENSUS;
  if (const char* env = std::getenv("DANCEKIT_CENSUS"); env != nullptr && *env != '\0') path = env;
  if (file) path = *file;

  const auto load = load_census(path, strict);
  for (const auto& w : load.warnings) std::cerr << "warning: skipped " << w << '\n';
  const auto report = run_census(load.records, CensusOptions{jobs});
  if (out_dir) write_reports(report, *out_dir);

  const auto& s = report.summary;
  if (format == "json") {
    std::cout << report_json(report).dump(2) << '\n';
  } else {
    std::cout << "census: " << s.records << " records, " << s.check_failures
              << " check failures, " << s.rows_with_errors << " rows with errors\n";
    for (const auto& [id, counts] : s.checks) {
      std::cout << id << ": " << counts.at("pass") << " pass, " << counts.at("fail") << " fail, "
                << counts.at("skip") << " skip\n";
    }
    std::cout << "flags:";
    for (const auto& [id, n] : s.flags) std::cout << ' ' << id << '=' << n;
    std::cout << '\n';
    for (const auto& row : report.rows) {
      std::cout << row.name << ": da in [" << row.da_lower << ", "
                << (row.best_upper ? std::to_string(*row.best_upper) : std::string("?")) << "]";
      if (row.diagram_min) std::cout << " diagram_min=" << *row.diagram_min;
      if (row.closure_min) std::cout << " closure_min=" << *row.closure_min;
      for (const auto& c : row.checks) {
        if (c.status == CheckStatus::fail) std::cout << " FAIL(" << c.id << ")";
      }
      for (const auto& f : row.flags) std::cout << ' ' << f.id;
      std::cout << '\n';
    }
    if (s.flags.at("F1") > 0) {
      std::cout << "!! conjecture candidates (alternating, braid index >= 3, danced by 2):";
      for (const auto& row : report.rows) {
        if (row.has_flag("F1")) std::cout << ' ' << row.name;
      }
      std::cout << '\n';
    }
  }
  return s.check_failures == 0 && s.rows_with_errors == 0 ? EXIT_SUCCESS : kExitNegative;
}

int run_convert(const InputFlags& in, const std::string& to, const std::string& format) {
  std::string value;
  if (to == "gauss") {
    value = serialize_gauss(resolve(in).seq);
  } else if (to == "pd" && in.pd) {
    value = serialize_pd(parse_pd(*in.pd));
  } else if (to == "braid" && in.braid) {
    value = serialize_braid(parse_braid(*in.braid));
  } else {
    throw error(errc::bad_parameter, "cannot convert this input to " + to);
  }
  if (format == "json") {
    auto j = json_envelope("convert");
    j["to"] = to;
    j["value"] = value;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << value << '\n';
  }
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Danceability of knot diagrams"};
  app.require_subcommand(1);

  InputFlags input;
  std::string format = "text";
  std::string cuts;
  std::optional<std::string> schedule_cuts;
  bool oracle = false;
  bool theorem3 = false;
  std::optional<std::string> census_file;
  std::optional<std::string> out_dir;
  bool strict = false;
  unsigned jobs = 1;
  std::string convert_to = "gauss";

  auto* check = app.add_subcommand("check", "decide whether a cut set dances the diagram");
  add_input_flags(check, input);
  check->add_option("--cuts", cuts, "orientation and gaps, e.g. F:0,3")->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* min = app.add_subcommand("min", "minimal number of dancers for the diagram");
  add_input_flags(min, input);
  min->add_flag("--oracle", oracle, "use the naive graph-per-candidate search");
  min->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* schedule = app.add_subcommand("schedule", "build and render a dance schedule");
  add_input_flags(schedule, input);
  auto* sc = schedule->add_option("--cuts", schedule_cuts, "orientation and gaps, e.g. F:0,3");
  schedule->add_flag("--theorem3", theorem3, "one dancer per braid strand (needs --braid)")
      ->excludes(sc);
  schedule->add_option("--format", format)->check(CLI::IsMember({"text", "svg", "json"}));

  auto* census = app.add_subcommand("census", "analyze a knot table");
  census->add_option("--file", census_file, "census CSV (default: $DANCEKIT_CENSUS or bundled)");
  census->add_flag("--strict", strict, "abort on the first malformed row");
  census->add_option("--out", out_dir, "directory for census_report.json / .csv");
  census->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  census->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* convert = app.add_subcommand("convert", "convert between diagram formats");
  add_input_flags(convert, input);
  convert->add_option("--to", convert_to)->check(CLI::IsMember({"gauss", "pd", "braid"}));
  convert->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*check) return run_check(input, cuts, format);
    if (*min) return run_min(input, oracle, format);
    if (*schedule) return run_schedule(input, schedule_cuts, theorem3, format);
    if (*census) return run_census_command(census_file, strict, out_dir, jobs, format);
    if (*convert) return run_convert(input, convert_to, format);
  } catch (const infeasible_cuts_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitNegative;
  } catch (const dancekit::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_domain_negative(e.code()) ? kExitNegative : kExitInput;
  }
  return kExitInput;
}
