#ifndef NETTEST_ERRORS_HPP
#define NETTEST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nettest {

// Base class for all library errors. The CLI maps these to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pair (i, j) violates 0 <= i < j < m.
struct InvalidPairError : Error {
  using Error::Error;
};

// Input exceeds a hard size gate (aut_count v > 8, hom brute force m > 200, ...).
struct SizeLimitError : Error {
  using Error::Error;
};

// Pattern not usable as a motif (disconnected, empty, unknown name,
// or not strictly balanced where a test requires it).
struct UnsupportedMotifError : Error {
  using Error::Error;
};

// Model outside the supported regime (e.g. non-ferromagnetic ERGM).
struct UnsupportedRegimeError : Error {
  using Error::Error;
};

struct EmptySampleError : Error {
  using Error::Error;
};

struct DegenerateSampleError : Error {
  using Error::Error;
};

struct IncompatibleSamplesError : Error {
  using Error::Error;
};

// Argument outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

struct NoCriticalPointError : Error {
  using Error::Error;
};

// Operation invoked in the wrong test regime (e.g. sharp rate at lambda >= 0).
struct RegimeError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line_number)
      : Error(msg + " (line " + std::to_string(line_number) + ")"),
        line(line_number) {}
  std::size_t line;
};

}  // namespace nettest

#endif
