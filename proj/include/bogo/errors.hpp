#pragma once

#include <stdexcept>
#include <string>

namespace bogo {

// Every error carries a category so the command line can map it to an exit code.
enum class ErrorKind { Argument, Config, Numerical, Validation };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define BOGO_ERROR(Name, Kind)                                              \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

BOGO_ERROR(ArgumentError, Argument)
BOGO_ERROR(DomainError, Argument)
BOGO_ERROR(InvalidMetric, Argument)
BOGO_ERROR(UnsupportedSpec, Argument)
BOGO_ERROR(EmptyBasis, Argument)
BOGO_ERROR(InvalidTrajectory, Argument)
BOGO_ERROR(EvaluationError, Numerical)
BOGO_ERROR(SolverError, Numerical)
BOGO_ERROR(StabilityError, Numerical)
BOGO_ERROR(ConfigError, Config)
BOGO_ERROR(ValidationFailure, Validation)

#undef BOGO_ERROR

}  // namespace bogo
