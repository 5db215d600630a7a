#pragma once

#include <stdexcept>
#include <string>

namespace homophyly {

/// Bad caller input: unknown node ids, out-of-range parameters, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The generator reached a state it cannot sample from (e.g. an empty candidate set).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric is undefined on the given input (zero edges, degenerate histogram, ...).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace homophyly
