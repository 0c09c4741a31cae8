#pragma once

#include <stdexcept>
#include <string>

namespace vi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSkew : public Error {
 public:
  explicit NotSkew(double asymmetry)
      : Error("matrix is not skew-symmetric (symmetric part " + std::to_string(asymmetry) + ")"),
        asymmetry_(asymmetry) {}
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

class NearPiAngle : public Error {
 public:
  explicit NearPiAngle(double angle)
      : Error("rotation angle " + std::to_string(angle) + " is too close to pi"), angle_(angle) {}
  double angle() const { return angle_; }

 private:
  double angle_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& where, int iterations, double residual)
      : Error(where + ": no convergence after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class UnknownRule : public Error {
 public:
  explicit UnknownRule(const std::string& name) : Error("unknown quadrature rule '" + name + "'") {}
};

class MissingDerivatives : public Error {
 public:
  using Error::Error;
};

class DegenerateData : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace vi
