#pragma once

#include <stdexcept>
#include <string>

namespace collider {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition (base < 2, n = 0 where n >= 1 is
// required, inconsistent manual parameters, t >= 2^L, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but exceeds an exhaustive-computation limit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A randomized search ran out of budget. `detail` carries a human-readable
// summary of the best candidate or the observed hit rate.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, std::string detail)
      : Error(what), detail_(std::move(detail)) {}
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

// A ternary-block target fell outside what eta/4 four-digit blocks can
// produce; a larger eta is needed.
class ParamsTooSmall : public Error {
 public:
  using Error::Error;
};

// The sampling interval I of a progression is empty.
class EmptyInterval : public Error {
 public:
  using Error::Error;
};

}  // namespace collider
