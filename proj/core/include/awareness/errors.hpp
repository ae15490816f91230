#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace awareness {

// Base for all library errors. `code()` is a stable machine-readable tag
// used by the CLI to derive exit codes and diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Invalid domain value or parameter (e.g. a lateral maneuver combined with a
// directional maneuver that forbids it, a non-positive duration).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("validation", message) {}
};

// Malformed input file. `line` is 1-based when known, 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(std::string path, std::size_t line, const std::string& message)
      : Error("parse", format(path, line, message)),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& path, std::size_t line,
                            const std::string& message) {
    std::string out = path;
    if (line > 0) {
      out += ":" + std::to_string(line);
    }
    out += ": " + message;
    return out;
  }

  std::string path_;
  std::size_t line_;
};

// Inconsistent module/fixture description (duplicate ids, relations that
// reference unknown modules, quadrant layouts disagreeing with coverage).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error("config", message) {}
};

// No module combination can satisfy the requirement. Carries the names of
// the regions whose requirement cannot be met by any valid candidate.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message,
                  std::vector<std::string> uncovered_regions)
      : Error("infeasible", message),
        uncovered_regions_(std::move(uncovered_regions)) {}

  const std::vector<std::string>& uncovered_regions() const noexcept {
    return uncovered_regions_;
  }

 private:
  std::vector<std::string> uncovered_regions_;
};

// An operation was called outside its contract (e.g. asking for the region
// mapping of a layer that is not active for the given situation).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error("contract", message) {}
};

// Invariant broken between cooperating components (solver output does not
// cover what the attention map requires).
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error("internal", message) {}
};

}  // namespace awareness
