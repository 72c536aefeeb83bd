#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace edge {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor or generator argument is outside its documented range.
class ParameterError : public Error {
 public:
  ParameterError(std::string parameter, const std::string& what)
      : Error(what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Brute-force symmetry routines refuse graphs above their size bound.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// The solver expanded more states than its budget allows.
class NodeLimitError : public Error {
 public:
  explicit NodeLimitError(std::uint64_t nodes)
      : Error("node limit exceeded after " + std::to_string(nodes) +
              " expanded states"),
        nodes_(nodes) {}
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t nodes_;
};

}  // namespace edge
