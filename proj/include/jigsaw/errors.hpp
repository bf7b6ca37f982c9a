#pragma once
#include <stdexcept>
#include <string>

namespace jigsaw {

// Malformed input: bad file headers, out-of-range colours, non-injective maps.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Refusal to run an enumeration that would blow past a size guard.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jigsaw
