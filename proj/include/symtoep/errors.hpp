#pragma once

#include <stdexcept>
#include <string>

namespace symtoep {

/// Base class for every error raised by the library. Configuration problems
/// derive from ConfigError; everything else is a numerical-domain error.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class SymmetryError : public Error {
  public:
    using Error::Error;
};

/// Raised when a matrix expected to be positive definite is not. Carries the
/// offending eigenvalue and, for symbols, the grid node where it occurred.
class PositivityError : public Error {
  public:
    PositivityError(const std::string& what, double eigenvalue, double theta = 0.0, bool has_theta = false)
        : Error(what), eigenvalue_(eigenvalue), theta_(theta), has_theta_(has_theta) {}

    double eigenvalue() const { return eigenvalue_; }
    double theta() const { return theta_; }
    bool has_theta() const { return has_theta_; }

  private:
    double eigenvalue_;
    double theta_;
    bool has_theta_;
};

/// The eigenvalues of -K^2 did not come in pairs.
class PairingError : public Error {
  public:
    using Error::Error;
};

/// Orthogonality was lost while building a Williamson basis inside a
/// degenerate eigenspace. Retrying on a slightly perturbed input usually helps.
class DegeneracyError : public Error {
  public:
    using Error::Error;
};

class DegeneratePairError : public Error {
  public:
    using Error::Error;
};

class GridError : public Error {
  public:
    using Error::Error;
};

class AliasingError : public Error {
  public:
    using Error::Error;
};

class WeightError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class SizeError : public Error {
  public:
    using Error::Error;
};

class IndexError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace symtoep
