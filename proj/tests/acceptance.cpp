// End-to-end acceptance run. Prints one [PASS]/[FAIL] line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dancekit/dancekit.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/process.hpp"

namespace {

using namespace dancekit;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool condition, const std::string& why) {
    if (!condition) fail(why);
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto started = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - started).count();
  if (budget_seconds > 0 && elapsed >= budget_seconds) {
    out.fail("took " + std::to_string(elapsed) + " s, budget " + std::to_string(budget_seconds) + " s");
  }
  if (!out.ok) ++failures;
  std::printf("[%s] %2d. %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), elapsed,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

const CensusLoad& census() {
  static const CensusLoad load = load_census(DANCEKIT_BUNDLED_CENSUS, true);
  return load;
}

std::vector<std::pair<std::string, GaussSequence>> census_diagrams() {
  std::vector<std::pair<std::string, GaussSequence>> out;
  for (const auto& r : census().records) {
    if (r.pd) out.emplace_back(r.name + " pd", pd_to_gauss(*r.pd));
    if (r.braid) out.emplace_back(r.name + " closure", braid_closure(*r.braid));
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

const KnotReport* find_row(const CensusReport& report, const std::string& name) {
  for (const auto& row : report.rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

}  // namespace

int main() {
  criterion(1, "trefoil diagrams need exactly two dancers", 1.0, [](Outcome& out) {
    const auto closure = braid_closure(parse_braid("n=2; 1 1 1"));
    out.require(min_dancers(closure).dancers == 2, "sigma_1^3 closure");
    const auto pd = pd_to_gauss(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"));
    out.require(min_dancers(pd).dancers == 2, "standard PD");
    const auto cli = proc::run(proc::cli("min --gauss " + serialize_gauss(closure)));
    out.require(cli.exit_code == 0 && cli.out.rfind("min_dancers: 2\n", 0) == 0, "CLI min");
  });

  criterion(2, "T(2,q) closures for q = 3, 5, 7, 9 need two dancers", 0, [](Outcome& out) {
    for (int q : {3, 5, 7, 9}) {
      const auto started = Clock::now();
      const int n = min_dancers(braid_closure(torus_braid(q))).dancers;
      const double s = std::chrono::duration<double>(Clock::now() - started).count();
      out.require(n == 2, "q=" + std::to_string(q) + " gave " + std::to_string(n));
      out.require(s < 1.0, "q=" + std::to_string(q) + " took " + std::to_string(s) + " s");
    }
  });

  criterion(3, "underpass cuts always dance and min_dancers <= c", 60.0, [](Outcome& out) {
    auto check = [&](const std::string& label, const GaussSequence& seq) {
      if (seq.empty()) {
        out.require(min_dancers(seq).dancers == 1, label + ": empty diagram");
        return;
      }
      out.require(static_cast<bool>(is_feasible(seq, underpass_cuts(seq))), label + ": underpass cuts");
      out.require(min_dancers(seq).dancers <= seq.crossing_count(), label + ": min_dancers > c");
    };
    for (const auto& [name, seq] : census_diagrams()) check(name, seq);
    gen::Rng rng(3);
    for (int i = 0; i < 1000; ++i) check("random #" + std::to_string(i), gen::gauss_up_to(rng, 8, 1));
  });

  criterion(4, "strand schedules verify with one dancer per strand", 60.0, [](Outcome& out) {
    auto check = [&](const std::string& label, const BraidWord& b) {
      const auto seq = braid_closure(b);
      const auto cuts = strand_cuts(b);
      const auto s = braid_schedule(b);
      out.require(static_cast<bool>(verify_schedule(seq, cuts, s)), label + ": schedule rejected");
      out.require(static_cast<int>(s.dancers.size()) == b.strands, label + ": dancer count");
      out.require(min_dancers(seq).dancers <= b.strands, label + ": min_dancers > strands");
    };
    for (const auto& r : census().records) {
      if (r.braid) check(r.name, *r.braid);
    }
    gen::Rng rng(4);
    for (int i = 0; i < 500; ++i) check("random #" + std::to_string(i), gen::knot_braid(rng, 5, 10));
  });

  const auto report = run_census(census().records, CensusOptions{4});

  criterion(5, "braid index 2 knots have danceability exactly 2", 0, [&](Outcome& out) {
    int rows = 0;
    for (const auto& r : census().records) {
      if (r.braid_index != 2 || !r.nontrivial) continue;
      ++rows;
      const auto* row = find_row(report, r.name);
      out.require(row && row->check("C3")->status == CheckStatus::pass, r.name + ": C3");
      out.require(row && row->da_exact == 2, r.name + ": da_exact");
    }
    out.require(rows > 0, "no braid index 2 rows");
    out.detail = out.ok ? std::to_string(rows) + " rows" : out.detail;
  });

  criterion(6, "8_15 is danced by fewer dancers than its braid index", 0, [&](Outcome& out) {
    const auto* row = find_row(report, "8_15");
    out.require(row != nullptr, "8_15 missing from census");
    if (!row) return;
    out.require(row->strand_bound && *row->strand_bound <= 4, "strand bound");
    out.require(row->diagram_min.has_value(), "diagram_min not published");
    out.require(row->best_upper && *row->best_upper <= 3,
                "best_upper " + (row->best_upper ? std::to_string(*row->best_upper) : "n/a") +
                    " and no discrepancy flag");
    out.require(row->has_flag("F2"), "F2 not raised");
    if (out.ok) {
      out.detail = "diagram_min " + std::to_string(*row->diagram_min) + ", closure_min " +
                   std::to_string(row->closure_min.value_or(-1)) + ", best_upper " +
                   std::to_string(*row->best_upper);
    }
  });

  criterion(7, "search strategies agree with the brute-force oracle for c <= 6", 120.0,
            [](Outcome& out) {
              auto check = [&](const std::string& label, const GaussSequence& seq) {
                const auto fast = min_dancers(seq, SearchStrategy::optimized);
                const auto naive = min_dancers(seq, SearchStrategy::naive);
                const auto ref = oracle::minimum(seq);
                out.require(fast.dancers == ref.dancers && naive.dancers == ref.dancers,
                            label + ": dancer counts differ");
                out.require(fast.witness == naive.witness, label + ": witnesses differ");
                out.require(fast.witness.gaps == ref.gaps &&
                                (fast.witness.orientation == Orientation::Reverse) == ref.reverse,
                            label + ": witness differs from oracle");
              };
              int census_cases = 0;
              for (const auto& [name, seq] : census_diagrams()) {
                if (seq.crossing_count() > 6) continue;
                ++census_cases;
                check(name, seq);
              }
              gen::Rng rng(7);
              for (int i = 0; i < 1000; ++i) check("random #" + std::to_string(i), gen::gauss_up_to(rng, 6));
              if (out.ok) out.detail = std::to_string(census_cases) + " census diagrams + 1000 random";
            });

  criterion(8, "mirror/reversal duality and rotation equivariance", 0, [](Outcome& out) {
    gen::Rng rng(8);
    std::uniform_int_distribution<long long> shift(-50, 50);
    for (int i = 0; i < 1000; ++i) {
      const auto seq = gen::gauss_up_to(rng, 8, 1);
      const auto base = min_dancers(seq);
      const auto mirrored = mirror(seq);
      out.require(min_dancers(mirrored).dancers == base.dancers, "mirror changed min_dancers");
      const auto flipped = base.witness.orientation == Orientation::Forward ? Orientation::Reverse
                                                                            : Orientation::Forward;
      out.require(static_cast<bool>(is_feasible(mirrored, CutSet{flipped, base.witness.gaps})),
                  "witness not dual under mirror");
      const long long k = shift(rng);
      out.require(min_dancers(rotate(seq, k)).dancers == base.dancers, "rotation changed min_dancers");
      const long long m = static_cast<long long>(seq.size());
      std::vector<std::size_t> moved;
      for (std::size_t g : base.witness.gaps) {
        moved.push_back(static_cast<std::size_t>(((static_cast<long long>(g) - k) % m + m) % m));
      }
      out.require(static_cast<bool>(is_feasible(rotate(seq, k), make_cuts(base.witness.orientation, moved))),
                  "witness not carried by rotation");
    }
  });

  criterion(9, "no nontrivial census diagram is 1-danceable", 0, [&](Outcome& out) {
    out.require(report.summary.checks.at("C4").at("fail") == 0, "C4 failures");
    for (const auto& r : census().records) {
      if (!r.nontrivial) continue;
      if (r.pd) out.require(!is_descending_start(pd_to_gauss(*r.pd)), r.name + " pd");
      if (r.braid) out.require(!is_descending_start(braid_closure(*r.braid)), r.name + " closure");
    }
  });

  criterion(10, "census and schedule output is byte-identical across runs", 0, [](Outcome& out) {
    const std::vector<std::string> commands = {
        "census --format json --jobs 1",
        "census --format json --jobs 8",
        "census",
        "schedule --braid 'n=2; 1 1 1' --theorem3 --format svg",
        "schedule --braid 'n=4; 1 1 -2 1 3 2 2 2 3' --theorem3 --format json",
        "schedule --gauss O1U2O3U1O2U3 --cuts F:0,3",
    };
    std::uint64_t census_json = 0;
    for (const auto& c : commands) {
      const auto first = proc::run(proc::cli(c));
      const auto second = proc::run(proc::cli(c));
      out.require(first.exit_code == 0 && !first.out.empty(), c + ": failed");
      out.require(fnv1a(first.out) == fnv1a(second.out), c + ": output changed between runs");
      if (c.rfind("census --format json", 0) == 0) {
        if (census_json == 0) census_json = fnv1a(first.out);
        out.require(census_json == fnv1a(first.out), c + ": job count changed the report");
      }
    }
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
