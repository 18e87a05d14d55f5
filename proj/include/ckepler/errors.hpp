#pragma once

#include <stdexcept>
#include <string>

namespace ckepler {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct ChartSingularError : Error { using Error::Error; };
struct OriginError : Error { using Error::Error; };
struct CentrifugalSingularityError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct ModelClassError : Error { using Error::Error; };
struct SamplerError : Error { using Error::Error; };
struct NotBoundedError : Error { using Error::Error; };

/// Integration failures carry the step index at which they occurred.
struct IntegratorError : Error {
  long step_index;
  IntegratorError(const std::string& msg, long step) : Error(msg), step_index(step) {}
};

struct NewtonDivergenceError : IntegratorError { using IntegratorError::IntegratorError; };
struct DomainExitError : IntegratorError { using IntegratorError::IntegratorError; };
struct CentrifugalWallError : IntegratorError { using IntegratorError::IntegratorError; };

}  // namespace ckepler
