#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace magicflow {

// Uniform error type carrying a machine-checkable kind tag
// (e.g. "CycleDetected", "HorizonTooSmall") plus a human message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace magicflow
