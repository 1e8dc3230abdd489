#pragma once

// Danceability of a single diagram.
//
// A cut set places dancers at gaps of the Gauss sequence; gap g is the point
// between stored events g-1 and g (cyclically). Each dancer traces the events
// from its gap to the next gap in the chosen direction. Dancers may change
// speed and pause at will, so a simultaneous tracing exists exactly when the
// precedence relation (chain order within each dancer plus Under(x) -> Over(x)
// for every crossing x) is acyclic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "dancekit/diagram.hpp"
#include "dancekit/error.hpp"

namespace dancekit {

enum class Orientation : std::uint8_t { Forward, Reverse };

struct CutSet {
  Orientation orientation = Orientation::Forward;
  std::vector<std::size_t> gaps;  ///< sorted ascending, distinct

  std::size_t dancers() const noexcept { return gaps.size(); }

  friend bool operator==(const CutSet&, const CutSet&) = default;
  friend auto operator<=>(const CutSet&, const CutSet&) = default;
};

inline CutSet make_cuts(Orientation orientation, std::vector<std::size_t> gaps) {
  std::sort(gaps.begin(), gaps.end());
  return CutSet{orientation, std::move(gaps)};
}

/// Throws errc::invalid_cuts unless the gaps are nonempty, distinct and below
/// 2c. The crossingless diagram accepts only the single gap 0.
inline void validate(const GaussSequence& seq, const CutSet& cuts) {
  if (cuts.gaps.empty()) throw error(errc::invalid_cuts, "cut set needs at least one gap");
  if (!std::is_sorted(cuts.gaps.begin(), cuts.gaps.end()) ||
      std::adjacent_find(cuts.gaps.begin(), cuts.gaps.end()) != cuts.gaps.end()) {
    throw error(errc::invalid_cuts, "gaps must be distinct and sorted");
  }
  const std::size_t limit = seq.empty() ? 1 : seq.size();
  if (cuts.gaps.back() >= limit) {
    throw error(errc::invalid_cuts, "gap " + std::to_string(cuts.gaps.back()) +
                                        " out of range 0.." + std::to_string(limit - 1));
  }
}

/// One event-index list per dancer, in ascending gap order. Dancer order
/// follows the gaps; event order follows the orientation.
inline std::vector<std::vector<std::size_t>> segments(const GaussSequence& seq,
                                                      const CutSet& cuts) {
  validate(seq, cuts);
  std::vector<std::vector<std::size_t>> out(cuts.gaps.size());
  const std::size_t m = seq.size();
  if (m == 0) return out;
  const std::size_t n = cuts.gaps.size();
  for (std::size_t d = 0; d < n; ++d) {
    const std::size_t gap = cuts.gaps[d];
    if (cuts.orientation == Orientation::Forward) {
      const std::size_t next = cuts.gaps[(d + 1) % n];
      std::size_t length = (next + m - gap) % m;
      if (length == 0) length = m;
      for (std::size_t k = 0; k < length; ++k) out[d].push_back((gap + k) % m);
    } else {
      const std::size_t prev = cuts.gaps[(d + n - 1) % n];
      std::size_t length = (gap + m - prev) % m;
      if (length == 0) length = m;
      for (std::size_t k = 0; k < length; ++k) out[d].push_back((gap + 2 * m - 1 - k) % m);
    }
  }
  return out;
}

struct PrecedenceGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> chain_edges;
  std::vector<std::pair<std::size_t, std::size_t>> crossing_edges;  ///< Under -> Over
};

inline PrecedenceGraph precedence_graph(const GaussSequence& seq, const CutSet& cuts) {
  PrecedenceGraph g;
  g.node_count = seq.size();
  for (const auto& seg : segments(seq, cuts)) {
    for (std::size_t k = 1; k < seg.size(); ++k) g.chain_edges.emplace_back(seg[k - 1], seg[k]);
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].role == Role::Under) g.crossing_edges.emplace_back(i, seq.partner(i));
  }
  return g;
}

/// Outcome of a feasibility check. On success `order` is a topological order
/// of all events; otherwise `cycle` is a directed cycle of the precedence graph.
struct Feasibility {
  bool feasible = false;
  std::vector<std::size_t> order;
  std::vector<std::size_t> cycle;

  explicit operator bool() const noexcept { return feasible; }
};

namespace detail {

inline std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t m = adj.size();
  std::vector<std::uint8_t> colour(m, 0);
  std::vector<std::size_t> parent(m, m);
  for (std::size_t root = 0; root < m; ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == adj[node].size()) {
        colour[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t to = adj[node][next++];
      if (colour[to] == 0) {
        colour[to] = 1;
        parent[to] = node;
        stack.emplace_back(to, 0);
      } else if (colour[to] == 1) {
        std::vector<std::size_t> cycle{to};
        for (std::size_t v = node; v != to; v = parent[v]) cycle.push_back(v);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
    }
  }
  return {};
}

}  // namespace detail

/// Decides whether `cuts` dances `seq`. The witness order always emits the
/// ready event of the lowest-numbered dancer first.
inline Feasibility is_feasible(const GaussSequence& seq, const CutSet& cuts) {
  const auto segs = segments(seq, cuts);
  const auto graph = precedence_graph(seq, cuts);
  const std::size_t m = graph.node_count;

  std::vector<std::pair<std::size_t, std::size_t>> key(m);
  for (std::size_t d = 0; d < segs.size(); ++d) {
    for (std::size_t k = 0; k < segs[d].size(); ++k) key[segs[d][k]] = {d, k};
  }
  std::vector<std::vector<std::size_t>> adj(m);
  std::vector<std::size_t> indegree(m, 0);
  for (const auto* edges : {&graph.chain_edges, &graph.crossing_edges}) {
    for (const auto& [from, to] : *edges) {
      adj[from].push_back(to);
      ++indegree[to];
    }
  }

  using Entry = std::pair<std::pair<std::size_t, std::size_t>, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t i = 0; i < m; ++i) {
    if (indegree[i] == 0) ready.push({key[i], i});
  }
  Feasibility result;
  while (!ready.empty()) {
    const std::size_t node = ready.top().second;
    ready.pop();
    result.order.push_back(node);
    for (std::size_t to : adj[node]) {
      if (--indegree[to] == 0) ready.push({key[to], to});
    }
  }
  result.feasible = result.order.size() == m;
  if (!result.feasible) {
    result.order.clear();
    result.cycle = detail::find_cycle(adj);
  }
  return result;
}

/// One dancer per crossing, each starting just before its Under passage.
inline CutSet underpass_cuts(const GaussSequence& seq) {
  if (seq.empty()) throw error(errc::empty_diagram, "diagram has no crossings");
  CutSet cuts;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].role == Role::Under) cuts.gaps.push_back(i);
  }
  return cuts;
}

enum class SearchStrategy { optimized, naive };

struct MinDancers {
  int dancers = 1;
  CutSet witness;
};

namespace detail {

// Flat-array feasibility checker reused across all candidates of one search.
class CandidateChecker {
 public:
  explicit CandidateChecker(const GaussSequence& seq)
      : m_(seq.size()),
        under_(m_),
        partner_(m_),
        cut_(m_, 0),
        indegree_(m_),
        stack_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      under_[i] = seq[i].role == Role::Under;
      partner_[i] = seq.partner(i);
    }
  }

  bool feasible(Orientation orientation, const std::vector<std::size_t>& gaps) {
    for (std::size_t g : gaps) cut_[g] = 1;
    const bool ok = check(orientation);
    for (std::size_t g : gaps) cut_[g] = 0;
    return ok;
  }

 private:
  // Successor of i along the dancer's path, or m_ if a gap ends the segment.
  std::size_t chain_next(Orientation orientation, std::size_t i) const {
    if (orientation == Orientation::Forward) {
      const std::size_t j = i + 1 == m_ ? 0 : i + 1;
      return cut_[j] ? m_ : j;
    }
    return cut_[i] ? m_ : (i == 0 ? m_ - 1 : i - 1);
  }

  bool check(Orientation orientation) {
    std::fill(indegree_.begin(), indegree_.end(), 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = chain_next(orientation, i);
      if (j != m_) ++indegree_[j];
      if (under_[i]) ++indegree_[partner_[i]];
    }
    std::size_t top = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (indegree_[i] == 0) stack_[top++] = i;
    }
    std::size_t emitted = 0;
    while (top > 0) {
      const std::size_t i = stack_[--top];
      ++emitted;
      const std::size_t j = chain_next(orientation, i);
      if (j != m_ && --indegree_[j] == 0) stack_[top++] = j;
      if (under_[i] && --indegree_[partner_[i]] == 0) stack_[top++] = partner_[i];
    }
    return emitted == m_;
  }

  std::size_t m_;
  std::vector<std::uint8_t> under_;
  std::vector<std::size_t> partner_;
  std::vector<std::uint8_t> cut_;
  std::vector<std::size_t> indegree_;
  std::vector<std::size_t> stack_;
};

// Advances to the next k-combination of 0..m-1 in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t m) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == m - k + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace detail

/// Exact minimal dancer count of the diagram, with the lexicographically
/// smallest witness (Forward before Reverse, then sorted gap tuple).
inline MinDancers min_dancers(const GaussSequence& seq,
                              SearchStrategy strategy = SearchStrategy::optimized) {
  if (seq.empty()) return {1, CutSet{Orientation::Forward, {0}}};
  const std::size_t m = seq.size();
  detail::CandidateChecker checker(seq);
  for (std::size_t n = 1; n <= m; ++n) {
    for (auto orientation : {Orientation::Forward, Orientation::Reverse}) {
      std::vector<std::size_t> gaps(n);
      for (std::size_t i = 0; i < n; ++i) gaps[i] = i;
      do {
        const bool ok = strategy == SearchStrategy::optimized
                            ? checker.feasible(orientation, gaps)
                            : is_feasible(seq, CutSet{orientation, gaps}).feasible;
        if (ok) return {static_cast<int>(n), CutSet{orientation, gaps}};
      } while (detail::next_combination(gaps, m));
    }
  }
  // Cutting every gap leaves single-event segments; only crossing edges remain.
  throw error(errc::infeasible_cuts, "no cut set dances the diagram");
}

/// A single-dancer cut set, if one exists: a start point and direction from
/// which every Under passage precedes its matching Over passage.
inline std::optional<CutSet> is_descending_start(const GaussSequence& seq) {
  if (seq.empty()) return CutSet{Orientation::Forward, {0}};
  const std::size_t m = seq.size();
  std::vector<std::uint8_t> seen(m);
  for (auto orientation : {Orientation::Forward, Orientation::Reverse}) {
    for (std::size_t gap = 0; gap < m; ++gap) {
      std::fill(seen.begin(), seen.end(), 0);
      bool descending = true;
      for (std::size_t k = 0; k < m && descending; ++k) {
        const std::size_t i =
            orientation == Orientation::Forward ? (gap + k) % m : (gap + 2 * m - 1 - k) % m;
        if (seq[i].role == Role::Over && !seen[seq.partner(i)]) descending = false;
        seen[i] = 1;
      }
      if (descending) return CutSet{orientation, {gap}};
    }
  }
  return std::nullopt;
}

}  // namespace dancekit
