#pragma once

#include <stdexcept>
#include <string>

namespace pouchsim {

// ---------------------------------------------------------------------------
// Error taxonomy
//
// Precondition violations on scalar arguments throw std::invalid_argument
// directly. The types below mark failures that callers (in particular the
// command-line tool) map to distinct exit codes.
// ---------------------------------------------------------------------------

/// Configuration file cannot be parsed or violates a documented constraint.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested operating point has no solution (e.g. no real positive root).
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

/// Simulation state became non-finite or a solver failed to converge.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read or written.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pouchsim
