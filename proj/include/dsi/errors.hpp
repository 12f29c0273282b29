#pragma once

#include <stdexcept>
#include <string>

namespace dsi {

/// Raised when an estimator hits degenerate data (zero variance, flat
/// objective, undetectable change points) rather than an invalid argument.
class degeneracy_error : public std::runtime_error {
public:
  explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for file read/write failures; carries the offending path in the message.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dsi
