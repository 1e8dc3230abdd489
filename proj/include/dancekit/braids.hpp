#pragma once

// Braid closures and the strand-per-dancer construction.
//
// Letters are read bottom to top. At a positive letter sigma_i the strand
// entering at position i passes under the strand entering at position i+1;
// negative letters swap the roles. The closure joins top position p back to
// bottom position p with crossing-free arcs.

#include <cstddef>
#include <numeric>
#include <vector>

#include "dancekit/diagram.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"

namespace dancekit {

/// perm[p-1] is the top position reached by the strand starting at bottom position p.
inline std::vector<int> braid_permutation(const BraidWord& b) {
  validate(b);
  std::vector<int> position_of(b.strands);  // strand (by start) -> current position
  std::iota(position_of.begin(), position_of.end(), 1);
  std::vector<int> strand_at(b.strands);  // position -> strand
  std::iota(strand_at.begin(), strand_at.end(), 0);
  for (const auto& l : b.letters) {
    const int lo = l.index - 1;
    std::swap(strand_at[lo], strand_at[lo + 1]);
    position_of[strand_at[lo]] = lo + 1;
    position_of[strand_at[lo + 1]] = lo + 2;
  }
  return position_of;
}

inline int closure_components(const BraidWord& b) {
  const auto perm = braid_permutation(b);
  std::vector<bool> seen(perm.size(), false);
  int components = 0;
  for (std::size_t p = 0; p < perm.size(); ++p) {
    if (seen[p]) continue;
    ++components;
    for (std::size_t q = p; !seen[q]; q = static_cast<std::size_t>(perm[q] - 1)) seen[q] = true;
  }
  return components;
}

/// Where one Gauss event sits in the braid picture.
struct ClosurePassage {
  std::size_t letter = 0;  ///< layer index, bottom = 0
  int entry_position = 1;  ///< position below the layer
  int exit_position = 1;   ///< position above the layer
  std::size_t pass = 0;    ///< which trip up the braid
};

struct BraidClosure {
  GaussSequence sequence;
  std::vector<ClosurePassage> passages;  ///< indexed like sequence events
  std::vector<std::size_t> pass_starts;  ///< first event of each pass
  std::vector<int> pass_positions;       ///< bottom position each pass starts from
  std::vector<std::array<std::size_t, 2>> letter_events;  ///< {under event, over event}
};

/// Traces the closure from the bottom of position 1. Throws not_a_knot_error
/// when the closure has more than one component.
inline BraidClosure trace_closure(const BraidWord& b) {
  const int components = closure_components(b);
  if (components != 1) throw not_a_knot_error(components);

  BraidClosure out;
  std::vector<StrandEvent> events;
  int position = 1;
  do {
    out.pass_starts.push_back(events.size());
    out.pass_positions.push_back(position);
    const std::size_t pass = out.pass_positions.size() - 1;
    for (std::size_t k = 0; k < b.letters.size(); ++k) {
      const auto& l = b.letters[k];
      if (position != l.index && position != l.index + 1) continue;
      const bool left = position == l.index;
      const Role role = (left == (l.sign > 0)) ? Role::Under : Role::Over;
      events.push_back({static_cast<int>(k) + 1, role});
      const int exit = left ? l.index + 1 : l.index;
      out.passages.push_back({k, position, exit, pass});
      position = exit;
    }
  } while (position != 1);

  out.letter_events.resize(b.letters.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    out.letter_events[out.passages[i].letter][events[i].role == Role::Under ? 0 : 1] = i;
  }
  out.sequence = GaussSequence(std::move(events));
  return out;
}

inline GaussSequence braid_closure(const BraidWord& b) { return trace_closure(b).sequence; }

/// sigma_1^q on two strands, whose closure is the torus knot T(2,q).
inline BraidWord torus_braid(int q) {
  if (q < 3 || q % 2 == 0) {
    throw error(errc::bad_parameter, "torus braid needs odd q >= 3, got " + std::to_string(q));
  }
  return BraidWord{2, std::vector<BraidLetter>(static_cast<std::size_t>(q), BraidLetter{1, 1})};
}

/// One dancer at the bottom of each strand, moving up the braid.
inline CutSet strand_cuts(const BraidWord& b) {
  const auto closure = trace_closure(b);
  return make_cuts(Orientation::Forward, closure.pass_starts);
}

}  // namespace dancekit
