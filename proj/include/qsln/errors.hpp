#pragma once

#include <stdexcept>
#include <string>

namespace qsln {

struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsln
