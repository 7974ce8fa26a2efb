#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace rotkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree text, rotation token, or canonical code.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("parse error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// The two trees of a pair do not have the same number of leaves.
class SizeMismatchError : public Error {
 public:
  SizeMismatchError(std::size_t left_leaves, std::size_t right_leaves)
      : Error("leaf count mismatch: " + std::to_string(left_leaves) + " vs " +
              std::to_string(right_leaves)) {}
};

// A rotation could not be applied. When raised while applying a sequence,
// index() names the offending op.
class RotationError : public Error {
 public:
  enum class Reason { InvalidPath, LeafChild };

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  RotationError(Reason reason, const std::string& what, std::size_t index = npos)
      : Error(index == npos ? what : "op " + std::to_string(index) + ": " + what),
        reason_(reason),
        index_(index) {}

  Reason reason() const noexcept { return reason_; }
  std::size_t index() const noexcept { return index_; }

 private:
  Reason reason_;
  std::size_t index_;
};

// The exact solver stored more states than it was allowed to.
class StateLimitError : public Error {
 public:
  explicit StateLimitError(std::size_t limit)
      : Error("state limit of " + std::to_string(limit) + " exceeded"), limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

// An argument outside an operation's domain (e.g. an opaque interval that is
// not an edge, or an enumeration size above the configured maximum).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotkit
