#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdes {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group element does not belong to the group it is used with.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// Lengths, widths or groups of operands do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Text could not be decoded; `position` is 1-based (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A brute-force computation would exceed its memory or time guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Structural violation in a cipher specification; `path` is a JSON pointer.
class SpecError : public Error {
 public:
  SpecError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace gdes
