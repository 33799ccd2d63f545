#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asbench {

/// Base class of every error raised by the harness.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (ARFF, CSV, YAML, JSON). `line` is 1-based, 0 when unknown.
class ParseError : public Error {
  public:
    ParseError(std::string source, std::size_t line, const std::string &message);

    [[nodiscard]] const std::string &source() const noexcept { return source_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::string source_;
    std::size_t line_;
};

/// Well-formed input that violates a data contract (unknown ids, invariant violations, missing files).
class DataError : public Error {
  public:
    using Error::Error;
};

/// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
  public:
    using Error::Error;
};

}  // namespace asbench
