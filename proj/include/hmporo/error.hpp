#pragma once

#include <stdexcept>
#include <string>

namespace hmporo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter lies outside its admissible domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid mesh, element or dof layout.
class MeshError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent inputs to assembly or the time integrator.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LinearSolveFailed : public Error {
 public:
  using Error::Error;
};

class PicardDiverged : public Error {
 public:
  PicardDiverged(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// Time step violates the dt <= C h^2 restriction of the decoupled scheme.
class StabilityProvisoViolated : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hmporo
