#pragma once

#include <stdexcept>
#include <string>

namespace snc {

/// Error categories, mirrored one-to-one by the C API status codes.
enum class ErrorKind {
  parameter = 1,
  domain = 2,
  divergence = 3,
  consistency = 4,
  config = 5,
  io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorKind::parameter, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
/// Raised when an improper integral does not converge; the message names the term.
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& w) : Error(ErrorKind::divergence, w) {}
};
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& w) : Error(ErrorKind::consistency, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};

}  // namespace snc
