#pragma once

#include <stdexcept>
#include <string>

namespace cat0 {

// Malformed or unsupported input: bad files, bad parameters, rejected complexes.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A query would need geometry beyond the part of the complex that is known to
// be complete around the base vertex.
class MarginExceeded : public InputError {
 public:
  explicit MarginExceeded(const std::string& what) : InputError(what) {}
};

}  // namespace cat0
