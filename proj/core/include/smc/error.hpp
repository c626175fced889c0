#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace smc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A probed point fell outside the [-5,5]x[-5,5] environment.
class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs at least one element received none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Fewer samples than an operation requires (e.g. an SVD of a single column).
class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// D_m R_i vanished, so no motor direction can be normalized.
class DegenerateDirectionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value. `field()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace smc
