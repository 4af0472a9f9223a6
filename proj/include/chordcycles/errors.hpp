#ifndef CHORDCYCLES_ERRORS_HPP
#define CHORDCYCLES_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace chords {

// Malformed or empty input data.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parameters that cannot be satisfied (generator arity, size caps, preconditions).
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A search that may legitimately fail exhausted its budget or proved impossible.
struct SearchError : std::runtime_error {
  explicit SearchError(const std::string& what) : std::runtime_error(what) {}
};

// A postcondition that is re-verified at runtime did not hold.  Reaching this
// means a bug, not bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Failure of a named step inside a multi-stage construction.
struct StageError : SearchError {
  StageError(std::string stage_name, const std::string& what)
      : SearchError(stage_name + ": " + what), stage(std::move(stage_name)) {}
  std::string stage;
};

inline void verify(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InfeasibleError(message);
}

}  // namespace chords

#endif
