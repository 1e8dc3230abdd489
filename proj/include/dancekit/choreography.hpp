#pragma once

// Explicit dance schedules: a global step for every event, per-dancer paths,
// and wait markers at Over passages whose Under passage belongs to someone else.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dancekit/braids.hpp"
#include "dancekit/codecs.hpp"
#include "dancekit/diagram.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"

namespace dancekit {

struct WaitMarker {
  std::size_t dancer = 0;
  std::size_t event = 0;  ///< the dancer pauses before this event

  friend bool operator==(const WaitMarker&, const WaitMarker&) = default;
  friend auto operator<=>(const WaitMarker&, const WaitMarker&) = default;
};

struct DanceSchedule {
  std::vector<std::vector<std::size_t>> dancers;  ///< event indices along each path
  std::vector<std::size_t> step;                  ///< global step of each event
  std::vector<WaitMarker> waits;                  ///< sorted by (dancer, event)

  /// Events in step order.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> out(step.size());
    for (std::size_t e = 0; e < step.size(); ++e) {
      if (step[e] < out.size()) out[step[e]] = e;
    }
    return out;
  }

  friend bool operator==(const DanceSchedule&, const DanceSchedule&) = default;
};

struct ScheduleCheck {
  bool ok = true;
  std::vector<std::string> violations;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks a schedule against the diagram directly: paths, permutation,
/// per-dancer monotonicity, under-first at every crossing.
inline ScheduleCheck verify_schedule(const GaussSequence& seq, const CutSet& cuts,
                                     const DanceSchedule& s) {
  ScheduleCheck check;
  auto violate = [&](std::string message) {
    check.ok = false;
    check.violations.push_back(std::move(message));
  };
  const std::size_t m = seq.size();

  // Expected paths, walked independently of the engine.
  if (cuts.gaps.empty() || (m == 0 ? cuts.gaps.back() != 0 : cuts.gaps.back() >= m) ||
      std::adjacent_find(cuts.gaps.begin(), cuts.gaps.end(),
                         [](std::size_t a, std::size_t b) { return a >= b; }) != cuts.gaps.end()) {
    violate("cut set is not valid for this diagram");
    return check;
  }
  std::vector<bool> is_gap(std::max<std::size_t>(m, 1), false);
  for (std::size_t g : cuts.gaps) is_gap[g] = true;
  std::vector<std::vector<std::size_t>> expected;
  for (std::size_t g : cuts.gaps) {
    std::vector<std::size_t> path;
    if (m > 0) {
      std::size_t at = g;
      const bool forward = cuts.orientation == Orientation::Forward;
      do {
        const std::size_t event = forward ? at : (at + m - 1) % m;
        path.push_back(event);
        at = forward ? (at + 1) % m : (at + m - 1) % m;
      } while (!is_gap[at]);
    }
    expected.push_back(std::move(path));
  }
  if (s.dancers != expected) violate("dancer paths do not match the cut set");

  if (s.step.size() != m) {
    violate("schedule has " + std::to_string(s.step.size()) + " steps for " + std::to_string(m) +
            " events");
    return check;
  }
  std::vector<int> used(m, 0);
  for (std::size_t e = 0; e < m; ++e) {
    if (s.step[e] >= m || used[s.step[e]]++ > 0) {
      violate("steps are not a permutation (event " + event_name(seq, e) + ")");
    }
  }
  for (std::size_t d = 0; d < s.dancers.size(); ++d) {
    const auto& path = s.dancers[d];
    for (std::size_t k = 1; k < path.size(); ++k) {
      if (path[k - 1] >= m || path[k] >= m) continue;
      if (s.step[path[k - 1]] >= s.step[path[k]]) {
        violate("dancer " + std::to_string(d) + " reaches " + event_name(seq, path[k]) +
                " before " + event_name(seq, path[k - 1]));
      }
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (seq[e].role != Role::Under) continue;
    const std::size_t over = seq.partner(e);
    if (s.step[e] >= s.step[over]) {
      violate("crossing " + std::to_string(seq[e].crossing) + " is passed over before under");
    }
  }
  return check;
}

namespace detail {

inline std::vector<WaitMarker> wait_markers(const GaussSequence& seq,
                                            const std::vector<std::vector<std::size_t>>& paths) {
  std::vector<std::size_t> owner(seq.size());
  for (std::size_t d = 0; d < paths.size(); ++d) {
    for (std::size_t e : paths[d]) owner[e] = d;
  }
  std::vector<WaitMarker> waits;
  for (std::size_t d = 0; d < paths.size(); ++d) {
    for (std::size_t e : paths[d]) {
      if (seq[e].role == Role::Over && owner[seq.partner(e)] != d) waits.push_back({d, e});
    }
  }
  std::sort(waits.begin(), waits.end());
  return waits;
}

inline void require_verified(const GaussSequence& seq, const CutSet& cuts,
                             const DanceSchedule& s) {
  const auto check = verify_schedule(seq, cuts, s);
  if (!check) {
    throw std::logic_error("schedule failed verification: " + check.violations.front());
  }
}

}  // namespace detail

/// Deterministic schedule for a feasible cut set: at each step the
/// lowest-numbered dancer whose next event is ready moves.
inline DanceSchedule schedule_from_cuts(const GaussSequence& seq, const CutSet& cuts) {
  DanceSchedule s;
  s.dancers = segments(seq, cuts);
  const std::size_t m = seq.size();
  s.step.assign(m, 0);
  std::vector<bool> done(m, false);
  std::vector<std::size_t> head(s.dancers.size(), 0);
  for (std::size_t t = 0; t < m; ++t) {
    bool moved = false;
    for (std::size_t d = 0; d < s.dancers.size() && !moved; ++d) {
      if (head[d] == s.dancers[d].size()) continue;
      const std::size_t e = s.dancers[d][head[d]];
      if (seq[e].role == Role::Over && !done[seq.partner(e)]) continue;
      s.step[e] = t;
      done[e] = true;
      ++head[d];
      moved = true;
    }
    if (!moved) {
      const auto blame = is_feasible(seq, cuts).cycle;
      std::string text;
      for (std::size_t e : blame) text += (text.empty() ? "" : " -> ") + event_name(seq, e);
      throw infeasible_cuts_error("cut " + serialize_cuts(cuts) + " is not danceable; cycle " +
                                      text,
                                  blame);
    }
  }
  s.waits = detail::wait_markers(seq, s.dancers);
  detail::require_verified(seq, cuts, s);
  return s;
}

/// One dancer per strand; letters are danced bottom to top, the under
/// dancer passing each crossing before the over dancer.
inline DanceSchedule braid_schedule(const BraidWord& b) {
  const auto closure = trace_closure(b);
  const auto& seq = closure.sequence;
  const CutSet cuts = make_cuts(Orientation::Forward, closure.pass_starts);
  DanceSchedule s;
  s.dancers = segments(seq, cuts);
  s.step.assign(seq.size(), 0);
  std::size_t t = 0;
  for (const auto& [under, over] : closure.letter_events) {
    s.step[under] = t++;
    s.step[over] = t++;
  }
  s.waits = detail::wait_markers(seq, s.dancers);
  detail::require_verified(seq, cuts, s);
  return s;
}

}  // namespace dancekit
