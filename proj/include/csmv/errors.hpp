#pragma once

#include <stdexcept>
#include <string>

namespace csmv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Guard text did not parse; position is a 0-based character offset.
struct FormulaParseError : Error {
  FormulaParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

// A model file line failed to parse or referenced something unknown.
struct ModelParseError : Error {
  ModelParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line(line) {}
  std::size_t line;
};

// Exhaustive enumeration refused: the formula mentions more atoms than the cap
// allows, i.e. the model is too large for truth-table checks.
struct AtomCapError : Error {
  AtomCapError(std::size_t atom_count, std::size_t cap)
      : Error("formula mentions " + std::to_string(atom_count) +
              " atoms, exceeding the enumeration cap of " + std::to_string(cap)),
        atom_count(atom_count),
        cap(cap) {}
  std::size_t atom_count;
  std::size_t cap;
};

}  // namespace csmv
