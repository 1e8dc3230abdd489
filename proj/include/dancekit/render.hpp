#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "dancekit/braids.hpp"
#include "dancekit/choreography.hpp"
#include "dancekit/codecs.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"

namespace dancekit {

enum class RenderFormat { Text, SVG };

/// A, B, ..., Z, AA, AB, ...
inline std::string dancer_name(std::size_t d) {
  std::string name;
  for (std::size_t k = d + 1; k > 0; k = (k - 1) / 26) {
    name.insert(name.begin(), static_cast<char>('A' + (k - 1) % 26));
  }
  return name;
}

/// One line per dancer: `A [gap 0]: |O1@1 U2@2 |O3@5`. A leading `|` marks a
/// possible wait before that passage; `@n` is the global step.
inline std::string render_text(const GaussSequence& seq, const CutSet& cuts,
                               const DanceSchedule& s) {
  const std::set<WaitMarker> waits(s.waits.begin(), s.waits.end());
  std::string out;
  for (std::size_t d = 0; d < s.dancers.size(); ++d) {
    out += dancer_name(d) + " [gap " + std::to_string(cuts.gaps[d]) + "]:";
    if (s.dancers[d].empty()) out += " (no crossings)";
    for (std::size_t e : s.dancers[d]) {
      out += ' ';
      if (waits.contains({d, e})) out += '|';
      out += event_name(seq, e) + '@' + std::to_string(s.step[e]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline constexpr std::array<const char*, 8> kDancerColours = {
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

class SvgLayout {
 public:
  SvgLayout(int strands, std::size_t layers) : strands_(strands), layers_(static_cast<int>(layers)) {}

  static constexpr int kMargin = 40;
  static constexpr int kColumn = 40;
  static constexpr int kLayer = 40;
  static constexpr int kArcStep = 12;

  int x(int position) const { return kMargin + (position - 1) * kColumn; }
  int bottom() const { return kMargin + strands_ * kArcStep + layers_ * kLayer; }
  int layer_bottom(std::size_t k) const { return bottom() - static_cast<int>(k) * kLayer; }
  int layer_top(std::size_t k) const { return layer_bottom(k) - kLayer; }
  int braid_top() const { return bottom() - layers_ * kLayer; }
  int arc_offset(int position) const { return (strands_ - position + 1) * kArcStep; }
  int return_x(int position) const {
    return x(strands_) + (strands_ - position + 1) * kColumn / 2 + kColumn / 2;
  }
  int width() const { return return_x(1) + kMargin; }
  int height() const { return bottom() + strands_ * kArcStep + kMargin; }

 private:
  int strands_;
  int layers_;
};

inline std::string line(int x1, int y1, int x2, int y2, const std::string& colour) {
  return "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(y1) + "\" x2=\"" +
         std::to_string(x2) + "\" y2=\"" + std::to_string(y2) + "\" stroke=\"" + colour +
         "\" stroke-width=\"3\" stroke-linecap=\"round\"/>\n";
}

}  // namespace detail

/// Braid picture: one-crossing layers stacked bottom to top, closure arcs on
/// the right, each stretch of strand coloured by the dancer tracing it, a dot
/// at every start point and a tick before every marked wait.
inline std::string render_svg(const BraidWord& braid, const CutSet& cuts, const DanceSchedule& s) {
  const auto closure = trace_closure(braid);
  const auto& seq = closure.sequence;
  const std::size_t m = seq.size();
  const detail::SvgLayout layout(braid.strands, braid.letters.size());

  std::vector<std::size_t> owner(m, 0);
  for (std::size_t d = 0; d < s.dancers.size(); ++d) {
    for (std::size_t e : s.dancers[d]) owner[e] = d;
  }
  std::vector<bool> is_gap(std::max<std::size_t>(m, 1), false);
  for (std::size_t g : cuts.gaps) is_gap[g] = true;
  auto colour = [&](std::size_t d) { return std::string(detail::kDancerColours[d % 8]); };
  // The dancer who starts at the gap before event e.
  auto starter = [&](std::size_t e) {
    return cuts.orientation == Orientation::Forward ? owner[e] : owner[(e + m - 1) % m];
  };

  std::string body;
  std::string dots;
  std::string ticks;
  auto dot = [&](int x, int y, std::size_t d) {
    dots += "<circle cx=\"" + std::to_string(x) + "\" cy=\"" + std::to_string(y) +
            "\" r=\"6\" fill=\"" + colour(d) + "\"/>\n";
  };

  // Walk the closure in stored order. Between two consecutive events the
  // strand belongs to the owner of the earlier event up to the start dot, and
  // to the owner of the later event after it.
  std::size_t current = m == 0 ? 0 : owner[m - 1];
  if (m == 0) dot(layout.x(1), layout.bottom(), 0);
  std::size_t event = 0;
  for (std::size_t pass = 0; pass < closure.pass_positions.size(); ++pass) {
    int position = closure.pass_positions[pass];
    const std::size_t first = closure.pass_starts[pass];
    const std::size_t pass_end =
        pass + 1 < closure.pass_starts.size() ? closure.pass_starts[pass + 1] : m;
    std::string strand = "<g class=\"pass\">\n";
    if (first < m && is_gap[first]) {
      dot(layout.x(position), layout.bottom(), starter(first));
      current = owner[first];
    }
    for (std::size_t k = 0; k < braid.letters.size(); ++k) {
      const int yb = layout.layer_bottom(k);
      const int yt = layout.layer_top(k);
      if (event >= pass_end || closure.passages[event].letter != k) {
        strand += detail::line(layout.x(position), yb, layout.x(position), yt, colour(current));
        continue;
      }
      const auto& passage = closure.passages[event];
      const int x1 = layout.x(passage.entry_position);
      const int x2 = layout.x(passage.exit_position);
      if (is_gap[event] && event != first) dot(x1, yb, starter(event));
      current = owner[event];
      const std::string c = colour(current);
      if (seq[event].role == Role::Over) {
        strand += detail::line(x1, yb, x2, yt, c);
      } else {
        // Under strand: leave a gap around the crossing point.
        strand += detail::line(x1, yb, x1 + (x2 - x1) * 3 / 10,
                               yb - detail::SvgLayout::kLayer * 3 / 10, c);
        strand += detail::line(x1 + (x2 - x1) * 7 / 10, yb - detail::SvgLayout::kLayer * 7 / 10,
                               x2, yt, c);
      }
      for (const auto& w : s.waits) {
        if (w.event != event) continue;
        if (cuts.orientation == Orientation::Forward) {
          ticks += detail::line(x1 - 7, yb - 4, x1 + 7, yb - 4, "#000000");
        } else {
          ticks += detail::line(x2 - 7, yt + 4, x2 + 7, yt + 4, "#000000");
        }
      }
      position = passage.exit_position;
      ++event;
    }
    // Closure arc from the top of `position` back to its bottom.
    const int top = layout.braid_top();
    const int off = layout.arc_offset(position);
    const int rx = layout.return_x(position);
    const int px = layout.x(position);
    const std::array<std::array<int, 2>, 6> points = {{{px, top},
                                                       {px, top - off},
                                                       {rx, top - off},
                                                       {rx, layout.bottom() + off},
                                                       {px, layout.bottom() + off},
                                                       {px, layout.bottom()}}};
    strand += "<polyline points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i > 0) strand += ' ';
      strand += std::to_string(points[i][0]) + "," + std::to_string(points[i][1]);
    }
    strand += "\" fill=\"none\" stroke=\"" + colour(current) + "\" stroke-width=\"3\"/>\n";
    strand += "</g>\n";
    body += strand;
  }

  std::string layers;
  for (std::size_t k = 0; k < braid.letters.size(); ++k) {
    const auto& l = braid.letters[k];
    layers += "<g class=\"layer\" data-letter=\"" + std::string(l.sign < 0 ? "-" : "") +
              std::to_string(l.index) + "\"><rect x=\"" + std::to_string(layout.x(1) - 12) +
              "\" y=\"" + std::to_string(layout.layer_top(k)) + "\" width=\"" +
              std::to_string(layout.x(braid.strands) - layout.x(1) + 24) + "\" height=\"" +
              std::to_string(detail::SvgLayout::kLayer) +
              "\" fill=\"#f4f4f4\" stroke=\"#dddddd\"/></g>\n";
  }

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(layout.width()) + "\" height=\"" + std::to_string(layout.height()) +
         "\" viewBox=\"0 0 " + std::to_string(layout.width()) + " " +
         std::to_string(layout.height()) + "\">\n";
  out += "<title>" + serialize_braid(braid) + " " + serialize_cuts(cuts) + "</title>\n";
  out += layers + body + ticks + dots + "</svg>\n";
  return out;
}

/// Text works for any schedule; SVG needs the braid word the sequence came from.
inline std::string render_schedule(const GaussSequence& seq, const CutSet& cuts,
                                   const DanceSchedule& s, RenderFormat format,
                                   const BraidWord* braid = nullptr) {
  const auto check = verify_schedule(seq, cuts, s);
  if (!check) throw error(errc::infeasible_cuts, "schedule does not verify: " + check.violations.front());
  if (format == RenderFormat::Text) return render_text(seq, cuts, s);
  if (braid == nullptr) {
    throw error(errc::unsupported_layout, "SVG layout needs a braid-derived diagram");
  }
  if (closure_components(*braid) != 1 || braid_closure(*braid) != seq) {
    throw error(errc::unsupported_layout, "sequence is not the closure of the given braid");
  }
  return render_svg(*braid, cuts, s);
}

}  // namespace dancekit
