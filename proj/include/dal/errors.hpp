#pragma once

#include <stdexcept>
#include <string>

namespace dal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A partial quotient below 1 was supplied or produced.
struct InvalidDigit : Error {
  using Error::Error;
};

// The digit stream ends (or its certified prefix ends) before the request can be answered.
struct NeedsMoreDigits : Error {
  using Error::Error;
};

// An enclosure is too wide to decide a digit or a sign; retry with more bits.
struct InsufficientPrecision : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// Two digit streams do not have the shape a prefix/first-digit comparison requires.
struct PatternError : Error {
  using Error::Error;
};

// Malformed command-line input or input files.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace dal
