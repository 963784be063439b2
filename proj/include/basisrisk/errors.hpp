#pragma once

#include <stdexcept>
#include <string>

namespace basisrisk {

/// Error taxonomy shared by all modules. Input-shaped kinds (schema, parse,
/// balance, metadata, not_found, size) map to CLI exit code 2, the rest to 1.
enum class ErrorKind {
  schema,
  parse,
  balance,
  metadata,
  not_found,
  size,
  validation,
  degenerate,
  insufficient_data,
  numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  bool is_input_error() const {
    switch (kind_) {
      case ErrorKind::schema:
      case ErrorKind::parse:
      case ErrorKind::balance:
      case ErrorKind::metadata:
      case ErrorKind::not_found:
      case ErrorKind::size:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace basisrisk
