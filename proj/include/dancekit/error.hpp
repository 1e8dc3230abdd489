#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dancekit {

enum class errc {
  syntax,
  role_mismatch,
  malformed_pd,
  multiple_components,
  index_out_of_range,
  empty_diagram,
  not_a_knot,
  bad_parameter,
  invalid_cuts,
  infeasible_cuts,
  unsupported_layout,
  io,
  format,
};

constexpr const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::syntax: return "SyntaxError";
    case errc::role_mismatch: return "RoleMismatch";
    case errc::malformed_pd: return "MalformedPD";
    case errc::multiple_components: return "MultipleComponents";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::empty_diagram: return "EmptyDiagram";
    case errc::not_a_knot: return "NotAKnot";
    case errc::bad_parameter: return "BadParameter";
    case errc::invalid_cuts: return "InvalidCuts";
    case errc::infeasible_cuts: return "InfeasibleCuts";
    case errc::unsupported_layout: return "UnsupportedLayout";
    case errc::io: return "IoError";
    case errc::format: return "FormatError";
  }
  return "Error";
}

/// True for errors that describe a well-formed input with a negative answer
/// (a link instead of a knot, cuts that cannot be danced) rather than bad input.
constexpr bool is_domain_negative(errc code) noexcept {
  return code == errc::not_a_knot || code == errc::infeasible_cuts;
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

class not_a_knot_error : public error {
 public:
  explicit not_a_knot_error(int components)
      : error(errc::not_a_knot,
              "braid closure has " + std::to_string(components) + " components"),
        components_(components) {}

  int components() const noexcept { return components_; }

 private:
  int components_;
};

// The cycle lists event indices; each one must precede the next, and the last must precede the first.
class infeasible_cuts_error : public error {
 public:
  infeasible_cuts_error(const std::string& message, std::vector<std::size_t> cycle)
      : error(errc::infeasible_cuts, message), cycle_(std::move(cycle)) {}

  const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

}  // namespace dancekit
