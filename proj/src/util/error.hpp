#pragma once

#include <stdexcept>
#include <string>

namespace debatenet {

// Error taxonomy shared by the core and mapped onto C status codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition on an observation failed (e.g. user has no text before cutoff).
struct IneligibleError : DataError {
  using DataError::DataError;
};

struct RankDeficientError : DataError {
  using DataError::DataError;
};

}  // namespace debatenet
