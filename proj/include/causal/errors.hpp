#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace causal {

/// Default upper bound on exhaustive enumerations (strategy tuples, wire
/// assignments, operation tuples).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Raised when an exhaustive enumeration would exceed the configured cap.
class EnumerationTooLarge : public std::runtime_error {
 public:
  EnumerationTooLarge(std::uint64_t required, std::uint64_t cap)
      : std::runtime_error("enumeration too large: " + std::to_string(required) +
                           " items exceed cap " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// A process (or decomposition, or circuit) whose probabilities do not sum to
/// one where they must.
class InconsistentProcess : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A black box or unitary pair that breaks the promise a procedure relies on
/// (unique fixed point; commuting or anticommuting).
class PromiseViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with a 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace causal
