#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Base of every error raised by the library. The CLI maps VerificationError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent (N, P, m0) triple.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dense full-space storage requested above the configured guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// m0 = 1: the |S_{V0-w}> direction does not exist.
class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

class CertificationError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class SearchWindowError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

// Wraps an error raised inside one stage of the search pipeline.
class PipelineError : public Error {
 public:
  PipelineError(int stage, std::string stage_name, const std::string& what)
      : Error("stage " + std::to_string(stage) + " (" + stage_name + "): " + what),
        stage_(stage),
        stage_name_(std::move(stage_name)) {}

  int stage() const noexcept { return stage_; }
  const std::string& stage_name() const noexcept { return stage_name_; }

 private:
  int stage_;
  std::string stage_name_;
};

}  // namespace qwalk
