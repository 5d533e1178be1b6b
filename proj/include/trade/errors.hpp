#pragma once

#include <stdexcept>
#include <string>

namespace trade {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatches, unknown indices, bad matrix contents.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A cumulative counter went backwards inside a window.
class CounterResetError : public Error {
 public:
  using Error::Error;
};

// No node can host the service without breaking a capacity.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Brute-force search space exceeds the configured bound.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// Input file problems. `path` addresses the offending field, e.g.
// "services[3].demand.cpu".
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace trade
