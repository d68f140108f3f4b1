#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace confmodel {

// Malformed input or an input graph that does not belong to the declared space.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A degree sequence with no simple realization.
class NotGraphical : public InputError {
 public:
  using InputError::InputError;
};

// The statistic is mathematically undefined for this graph (e.g. zero variance).
class UndefinedStatistic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  EnumerationCapExceeded(std::uint64_t stubs, std::uint64_t cap)
      : std::length_error("enumeration refused: " + std::to_string(stubs) +
                          " stubs exceeds cap of " + std::to_string(cap)),
        stubs_(stubs), cap_(cap) {}
  std::uint64_t stubs() const noexcept { return stubs_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t stubs_;
  std::uint64_t cap_;
};

class SamplingExhausted : public std::runtime_error {
 public:
  explicit SamplingExhausted(std::uint64_t attempts)
      : std::runtime_error("rejection sampling gave up after " +
                           std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}
  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

}  // namespace confmodel
