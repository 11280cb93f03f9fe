#pragma once

#include <stdexcept>
#include <string>

namespace gallery {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corpus files that are missing, malformed or inconsistent.
class LoadError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Bad QuerySpec: out-of-range limit, min > max.
class QueryError : public Error {
 public:
  enum class Kind { kMalformed, kInvertedRange };

  QueryError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gallery
