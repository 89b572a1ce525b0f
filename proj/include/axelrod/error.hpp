#pragma once

#include <stdexcept>
#include <string>

namespace axelrod {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bad argument: out-of-range index, non-adjacent pair, malformed file, ...
class InvalidInput : public Error {
  public:
    using Error::Error;
};

class UnsupportedProjection : public Error {
  public:
    using Error::Error;
};

class UnsupportedTopology : public Error {
  public:
    using Error::Error;
};

// A (before, event, after) triple or replay that does not add up.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

// Domain bound evaluated at F == q.
class PoleError : public Error {
  public:
    using Error::Error;
};

class OutOfHypothesis : public Error {
  public:
    using Error::Error;
};

class CapacityError : public Error {
  public:
    using Error::Error;
};

}  // namespace axelrod
