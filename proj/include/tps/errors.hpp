#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tps {

/// Base of every error raised by the library. All of them describe invalid
/// input or a violated precondition; the CLI maps them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A spectrum that cannot come from a real sequence.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Electric/magnetic spectra combined in a way that breaks the pairing of
/// the two transforms.
class KindError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ExtrapolationError : public Error {
 public:
  ExtrapolationError(std::size_t k, const std::string& what)
      : Error("bin k=" + std::to_string(k) + ": " + what), k_(k) {}

  /// 1-based w-domain index of the offending bin.
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t k_;
};

}  // namespace tps
