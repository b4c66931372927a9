#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace assoc60 {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on a numeric argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No cell radius exists for the requested SNR.
class InfeasibleRadiusError : public Error {
 public:
  using Error::Error;
};

// Pruning removed every candidate AP of a client.
class InfeasibleClientError : public Error {
 public:
  InfeasibleClientError(std::size_t client, const std::string& what)
      : Error(what), client_(client) {}
  std::size_t client() const noexcept { return client_; }

 private:
  std::size_t client_;
};

// Client placement could not be completed.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid input document. `field()` names the offending key.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace assoc60
