#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace proc {

struct Result {
  int exit_code = -1;
  std::string out;
};

// Runs `command` through the shell and captures stdout. stderr is discarded
// unless the command redirects it.
inline Result run(const std::string& command) {
  Result r;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline std::string cli(const std::string& args) { return std::string(DANCEKIT_CLI_PATH) + " " + args; }

}  // namespace proc
