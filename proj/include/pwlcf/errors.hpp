#pragma once

#include <stdexcept>
#include <string>

namespace pwlcf {

// Violated model precondition (e.g. an unstable law where stability is
// required). Distinct from std::invalid_argument, which covers malformed
// input data; the CLI maps the two classes to different exit codes.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pwlcf
