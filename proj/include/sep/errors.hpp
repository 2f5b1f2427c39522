#ifndef SEP_ERRORS_HPP
#define SEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sep {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or arguments: bad sweep parameters, malformed
/// feature subsets, out-of-range indices passed by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Problems with input data: unreadable files, malformed CSV cells, datasets
/// that violate the invariants the measures rely on.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A computation cannot proceed on otherwise valid data: empty neighbor
/// candidate sets, degenerate hybrid references, search guards.
class ComputeError : public Error {
 public:
  using Error::Error;
};

}  // namespace sep

#endif  // SEP_ERRORS_HPP
