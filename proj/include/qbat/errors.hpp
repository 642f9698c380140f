#pragma once

#include <stdexcept>
#include <string>

namespace qbat {

// Error taxonomy mirrors the CLI exit codes: input errors (2), solver
// failures (3), internal invariant violations (4).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qbat
