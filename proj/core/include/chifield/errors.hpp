#pragma once

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a distinct process exit code (config 2, numerical 3, degenerate data 4).

#include <stdexcept>
#include <string>

namespace chifield {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an API precondition (bad dimension, negative argument, ...).
class argument_error : public error {
 public:
  using error::error;
};

/// Malformed configuration input: JSON spec, CSV file, CLI grid syntax.
class config_error : public error {
 public:
  using error::error;
};

/// Numerical failure: non-finite integrand, series that cannot converge
/// within its iteration cap.
class numerical_error : public error {
 public:
  using error::error;
};

/// Data made a statistic undefined (zero contingency-table marginal,
/// single-marker chromosome passed to a lattice-based formula).
class degenerate_data_error : public error {
 public:
  using error::error;
};

}  // namespace chifield
