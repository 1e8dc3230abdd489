#pragma once

// Text formats.
//
//   Gauss:  O1U2O3U1O2U3        tokens O<k>/U<k>, case-insensitive, whitespace ignored
//   PD:     X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)   separators: whitespace , ;
//   Braid:  n=2; 1 1 1          letters s<i>/S<i> or signed integers i/-i
//   Cuts:   F:0,3               orientation F|R, then gap indices
//
// Serializers emit the canonical spelling shown above.

#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dancekit/diagram.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"

namespace dancekit {

namespace detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip(std::string_view separators = " \t\r\n") {
    while (pos_ < text_.size() && separators.find(text_[pos_]) != std::string_view::npos) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t position() const { return pos_; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c, std::string_view what) {
    skip();
    if (!accept(c)) fail(std::string("expected '") + c + "' " + std::string(what));
  }

  int number(std::string_view what) {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (begin == pos_) fail("expected " + std::string(what));
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc{}) fail(std::string(what) + " out of range");
    return value;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw error(errc::syntax, message + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GaussSequence parse_gauss(std::string_view text) {
  detail::Scanner in(text);
  std::vector<StrandEvent> events;
  for (in.skip(); !in.done(); in.skip()) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(in.peek())));
    if (c != 'O' && c != 'U') in.fail("expected O<k> or U<k>");
    in.accept(in.peek());
    const int label = in.number("crossing label");
    if (label < 1) in.fail("crossing labels start at 1");
    events.push_back({label, c == 'U' ? Role::Under : Role::Over});
  }
  return GaussSequence(std::move(events));
}

inline std::string serialize_gauss(const GaussSequence& seq) {
  std::string out;
  for (const auto& e : seq.events()) {
    out += e.role == Role::Under ? 'U' : 'O';
    out += std::to_string(e.crossing);
  }
  return out;
}

inline PDCode parse_pd(std::string_view text) {
  detail::Scanner in(text);
  PDCode pd;
  constexpr std::string_view separators = " \t\r\n,;";
  for (in.skip(separators); !in.done(); in.skip(separators)) {
    if (!in.accept('X') && !in.accept('x')) in.fail("expected X(a,b,c,d)");
    in.expect('(', "after X");
    std::array<int, 4> tuple{};
    for (int k = 0; k < 4; ++k) {
      if (k > 0) in.expect(',', "between edge labels");
      in.skip();
      tuple[k] = in.number("edge label");
    }
    in.expect(')', "closing the crossing tuple");
    pd.crossings.push_back(tuple);
  }
  validate(pd);
  return pd;
}

inline std::string serialize_pd(const PDCode& pd) {
  std::string out;
  for (const auto& x : pd.crossings) {
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(x[0]) + ',' + std::to_string(x[1]) + ',' + std::to_string(x[2]) +
           ',' + std::to_string(x[3]) + ')';
  }
  return out;
}

inline BraidWord parse_braid(std::string_view text) {
  detail::Scanner in(text);
  BraidWord b;
  in.skip();
  if (!in.accept('n') && !in.accept('N')) in.fail("expected header n=<strands>;");
  in.expect('=', "in braid header");
  in.skip();
  b.strands = in.number("strand count");
  in.expect(';', "ending braid header");
  if (b.strands < 1) in.fail("strand count must be at least 1");
  for (in.skip(); !in.done(); in.skip()) {
    int sign = 1;
    if (in.accept('S') || in.accept('-')) {
      sign = -1;
    } else if (!in.accept('s')) {
      in.accept('+');
    }
    const int index = in.number("generator index");
    const char after = in.peek();
    if (!in.done() && !std::isspace(static_cast<unsigned char>(after))) {
      in.fail("letters must be separated by whitespace");
    }
    b.letters.push_back({index, sign});
  }
  validate(b);
  return b;
}

inline std::string serialize_braid(const BraidWord& b) {
  std::string out = "n=" + std::to_string(b.strands) + ";";
  for (const auto& l : b.letters) {
    out += ' ';
    if (l.sign < 0) out += '-';
    out += std::to_string(l.index);
  }
  return out;
}

/// Parses "F:0,3" / "R:1". Gap indices are sorted; validation against a
/// diagram happens where the cut set is used.
inline CutSet parse_cuts(std::string_view text) {
  detail::Scanner in(text);
  in.skip();
  CutSet cuts;
  const char o = static_cast<char>(std::toupper(static_cast<unsigned char>(in.peek())));
  if (o == 'F') {
    cuts.orientation = Orientation::Forward;
  } else if (o == 'R') {
    cuts.orientation = Orientation::Reverse;
  } else {
    in.fail("expected orientation F or R");
  }
  in.accept(in.peek());
  in.expect(':', "after orientation");
  std::vector<std::size_t> gaps;
  constexpr std::string_view separators = " \t,";
  for (in.skip(separators); !in.done(); in.skip(separators)) {
    gaps.push_back(static_cast<std::size_t>(in.number("gap index")));
  }
  if (gaps.empty()) in.fail("cut set needs at least one gap");
  return make_cuts(cuts.orientation, std::move(gaps));
}

inline std::string serialize_cuts(const CutSet& cuts) {
  std::string out = cuts.orientation == Orientation::Forward ? "F:" : "R:";
  for (std::size_t i = 0; i < cuts.gaps.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(cuts.gaps[i]);
  }
  return out;
}

/// "U1", "O3": the display name of one event.
inline std::string event_name(const GaussSequence& seq, std::size_t i) {
  return std::string(1, seq[i].role == Role::Under ? 'U' : 'O') + std::to_string(seq[i].crossing);
}

}  // namespace dancekit
