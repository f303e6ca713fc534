#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace btq {

// Invalid mathematical input: inverting zero, singular matrices, D = 0 where
// a nonempty level is required.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A finite object is larger than the caller allowed.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Search depth too small for the requested certificate.
class BoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A computed object failed its own verification. Never swallowed.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace btq
