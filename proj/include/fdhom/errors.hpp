#pragma once

#include <stdexcept>
#include <string>

namespace fdhom {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonAdmissible : public Error {
 public:
  using Error::Error;
};

class NotFiniteDimensional : public Error {
 public:
  NotFiniteDimensional(const std::string& what, int cap) : Error(what), cap_(cap) {}
  int cap() const { return cap_; }

 private:
  int cap_;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class NoGorensteinCertificate : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class PdBoundExceeded : public Error {
 public:
  PdBoundExceeded(const std::string& what, int bound) : Error(what), bound_(bound) {}
  int bound() const { return bound_; }

 private:
  int bound_;
};

/// Raised when a randomized search for an isomorphism or a split map could not
/// settle the question over a small field and exhaustive search is too large.
class Undecided : public Error {
 public:
  using Error::Error;
};

}  // namespace fdhom
