#pragma once

// Machine-readable payloads. Every top-level object carries schema_version.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "dancekit/choreography.hpp"
#include "dancekit/codecs.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/render.hpp"

namespace dancekit {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json json_envelope(const std::string& command) {
  return nlohmann::json{{"schema_version", kSchemaVersion}, {"command", command}};
}

inline nlohmann::json event_names(const GaussSequence& seq, const std::vector<std::size_t>& events) {
  auto out = nlohmann::json::array();
  for (std::size_t e : events) out.push_back(event_name(seq, e));
  return out;
}

inline nlohmann::json feasibility_json(const GaussSequence& seq, const CutSet& cuts,
                                       const Feasibility& f) {
  auto j = json_envelope("check");
  j["sequence"] = serialize_gauss(seq);
  j["cuts"] = serialize_cuts(cuts);
  j["dancers"] = cuts.dancers();
  j["feasible"] = f.feasible;
  if (f.feasible) {
    j["witness"] = event_names(seq, f.order);
  } else {
    j["blame_cycle"] = event_names(seq, f.cycle);
  }
  return j;
}

inline nlohmann::json schedule_json(const GaussSequence& seq, const CutSet& cuts,
                                    const DanceSchedule& s) {
  auto j = json_envelope("schedule");
  j["sequence"] = serialize_gauss(seq);
  j["cuts"] = serialize_cuts(cuts);
  j["order"] = event_names(seq, s.order());
  auto dancers = nlohmann::json::array();
  for (std::size_t d = 0; d < s.dancers.size(); ++d) {
    auto events = nlohmann::json::array();
    for (std::size_t e : s.dancers[d]) {
      bool wait = false;
      for (const auto& w : s.waits) wait = wait || (w.dancer == d && w.event == e);
      events.push_back({{"event", event_name(seq, e)}, {"index", e}, {"step", s.step[e]},
                        {"wait", wait}});
    }
    dancers.push_back({{"name", dancer_name(d)}, {"gap", cuts.gaps[d]}, {"events", events}});
  }
  j["dancers"] = dancers;
  j["wait_count"] = s.waits.size();
  return j;
}

}  // namespace dancekit
