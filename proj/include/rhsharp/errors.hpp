#pragma once

#include <stdexcept>
#include <string>

namespace rhsharp {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A root solver failed to bracket or converge.
class IterationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Valid input that the library deliberately does not handle.
class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rhsharp
