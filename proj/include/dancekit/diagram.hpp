#pragma once

// Knot diagram representations: Gauss sequences (the engine's working form),
// PD codes and braid words (ingestion forms).

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dancekit/error.hpp"

namespace dancekit {

enum class Role : std::uint8_t { Under, Over };

constexpr Role opposite(Role role) noexcept {
  return role == Role::Under ? Role::Over : Role::Under;
}

/// One passage through a crossing.
struct StrandEvent {
  int crossing = 1;
  Role role = Role::Under;

  friend bool operator==(const StrandEvent&, const StrandEvent&) = default;
};

/// Cyclic sequence of crossing passages met while traversing a knot diagram once.
///
/// Every crossing label occurs exactly twice, once Under and once Over. Labels
/// are renumbered to 1..c in order of first appearance, so two sequences
/// describing the same passage pattern compare equal. Planar realizability is
/// not checked; virtual sequences are accepted.
class GaussSequence {
 public:
  GaussSequence() = default;

  /// Validates and canonically relabels. Throws errc::role_mismatch when some
  /// label does not have exactly one Under and one Over passage.
  explicit GaussSequence(std::vector<StrandEvent> events) {
    std::map<int, std::array<int, 2>> seen;  // label -> {under count, over count}
    for (const auto& e : events) {
      if (e.crossing < 1) {
        throw error(errc::role_mismatch,
                    "crossing labels must be positive, got " + std::to_string(e.crossing));
      }
      ++seen[e.crossing][e.role == Role::Under ? 0 : 1];
    }
    for (const auto& [label, counts] : seen) {
      if (counts[0] != 1 || counts[1] != 1) {
        throw error(errc::role_mismatch,
                    "crossing " + std::to_string(label) + " has " + std::to_string(counts[0]) +
                        " under and " + std::to_string(counts[1]) +
                        " over passages (expected one of each)");
      }
    }

    std::map<int, int> relabel;
    std::map<int, std::size_t> first_index;
    partner_.assign(events.size(), 0);
    for (std::size_t i = 0; i < events.size(); ++i) {
      auto [it, inserted] = relabel.try_emplace(events[i].crossing,
                                               static_cast<int>(relabel.size()) + 1);
      if (inserted) {
        first_index[it->second] = i;
      } else {
        std::size_t j = first_index[it->second];
        partner_[i] = j;
        partner_[j] = i;
      }
      events[i].crossing = it->second;
    }
    events_ = std::move(events);
  }

  std::span<const StrandEvent> events() const noexcept { return events_; }
  const StrandEvent& operator[](std::size_t i) const { return events_[i]; }

  /// Number of passages, 2c.
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  int crossing_count() const noexcept { return static_cast<int>(events_.size() / 2); }

  /// Index of the other passage through the same crossing.
  std::size_t partner(std::size_t i) const { return partner_[i]; }

  friend bool operator==(const GaussSequence& a, const GaussSequence& b) {
    return a.events_ == b.events_;
  }

 private:
  std::vector<StrandEvent> events_;
  std::vector<std::size_t> partner_;
};

/// Pointwise Under/Over toggle; event order is unchanged.
inline GaussSequence mirror(const GaussSequence& seq) {
  std::vector<StrandEvent> events(seq.events().begin(), seq.events().end());
  for (auto& e : events) e.role = opposite(e.role);
  return GaussSequence(std::move(events));
}

/// Cyclic shift left by k (event k becomes event 0), then relabeled.
inline GaussSequence rotate(const GaussSequence& seq, long long k) {
  if (seq.empty()) return seq;
  const auto m = static_cast<long long>(seq.size());
  const auto shift = static_cast<std::size_t>(((k % m) + m) % m);
  std::vector<StrandEvent> events;
  events.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) events.push_back(seq[(i + shift) % seq.size()]);
  return GaussSequence(std::move(events));
}

/// Planar diagram code. Each tuple lists edge labels starting at the incoming
/// under-edge and proceeding counterclockwise; the under strand runs a -> c.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;

  friend bool operator==(const PDCode&, const PDCode&) = default;
};

/// Throws errc::malformed_pd unless every label is positive and occurs exactly twice.
inline void validate(const PDCode& pd) {
  std::map<int, int> count;
  for (const auto& x : pd.crossings) {
    for (int label : x) {
      if (label < 1) {
        throw error(errc::malformed_pd, "edge labels must be positive, got " + std::to_string(label));
      }
      ++count[label];
    }
  }
  for (const auto& [label, n] : count) {
    if (n != 2) {
      throw error(errc::malformed_pd, "edge " + std::to_string(label) + " appears " +
                                          std::to_string(n) + " times (expected 2)");
    }
  }
}

/// Traverses the single component of `pd` starting on its smallest edge label.
///
/// A passage entering a tuple at slot 0 or 2 runs along the under strand and is
/// recorded Under; slots 1 and 3 are Over. Throws errc::multiple_components if
/// the walk closes before covering every edge.
inline GaussSequence pd_to_gauss(const PDCode& pd) {
  validate(pd);
  if (pd.crossings.empty()) return {};

  struct Slot {
    std::size_t crossing;
    int position;
    bool operator==(const Slot&) const = default;
  };
  std::map<int, std::vector<Slot>> occurrences;
  for (std::size_t x = 0; x < pd.crossings.size(); ++x) {
    for (int p = 0; p < 4; ++p) occurrences[pd.crossings[x][p]].push_back({x, p});
  }

  const int start = occurrences.begin()->first;
  const auto& first = occurrences.at(start);
  const int successor = std::next(occurrences.begin())->first;

  // Pick the occurrence the walk arrives at first.
  Slot entry = first[0];
  bool chosen = false;
  for (const auto& s : first) {
    if (s.position == 0) {
      entry = s;
      chosen = true;
    }
  }
  if (!chosen) {
    for (std::size_t k = 0; k < 2 && !chosen; ++k) {
      if (first[k].position == 2) {
        entry = first[1 - k];
        chosen = true;
      }
    }
  }
  if (!chosen) {
    for (const auto& s : first) {
      const auto& t = pd.crossings[s.crossing];
      if (t[(s.position + 2) % 4] == successor && !chosen) {
        entry = s;
        chosen = true;
      }
    }
  }

  const std::size_t edge_count = occurrences.size();
  std::vector<std::pair<std::size_t, Role>> walk;
  std::map<int, bool> used;
  Slot at = entry;
  while (true) {
    walk.emplace_back(at.crossing, at.position % 2 == 0 ? Role::Under : Role::Over);
    const int exit_position = (at.position + 2) % 4;
    const int edge = pd.crossings[at.crossing][exit_position];
    if (used[edge]) {
      throw error(errc::malformed_pd, "edge " + std::to_string(edge) + " traversed twice");
    }
    used[edge] = true;
    const Slot leaving{at.crossing, exit_position};
    const auto& occ = occurrences.at(edge);
    at = occ[0] == leaving ? occ[1] : occ[0];
    if (at == entry) break;
    if (walk.size() > edge_count) {
      throw error(errc::malformed_pd, "traversal does not close");
    }
  }
  if (walk.size() != edge_count) {
    throw error(errc::multiple_components,
                "traversal from edge " + std::to_string(start) + " closes after " +
                    std::to_string(walk.size()) + " of " + std::to_string(edge_count) + " edges");
  }

  std::vector<StrandEvent> events;
  events.reserve(walk.size());
  for (const auto& [x, role] : walk) events.push_back({static_cast<int>(x) + 1, role});
  try {
    return GaussSequence(std::move(events));
  } catch (const error& e) {
    throw error(errc::malformed_pd, e.what());
  }
}

struct BraidLetter {
  int index = 1;  ///< generator sigma_index, 1..strands-1
  int sign = 1;   ///< +1 or -1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

/// Word in the Artin generators, read bottom to top.
struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

inline void validate(const BraidWord& b) {
  if (b.strands < 1) {
    throw error(errc::bad_parameter, "braid needs at least one strand");
  }
  for (const auto& l : b.letters) {
    if (l.index < 1 || l.index > b.strands - 1) {
      throw error(errc::index_out_of_range,
                  "generator " + std::to_string(l.index) + " outside 1.." +
                      std::to_string(b.strands - 1));
    }
    if (l.sign != 1 && l.sign != -1) {
      throw error(errc::bad_parameter, "letter sign must be +1 or -1");
    }
  }
}

}  // namespace dancekit
