#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypertrace {

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the brute-force minimizers; carries the iterate trace so the
// failing case can be replayed.
class OptimizerError : public std::runtime_error {
 public:
  OptimizerError(const std::string& what, std::vector<std::vector<double>> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<std::vector<double>>& trace() const { return trace_; }

 private:
  std::vector<std::vector<double>> trace_;
};

}  // namespace hypertrace
