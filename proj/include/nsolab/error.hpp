#pragma once

#include <stdexcept>
#include <string>

namespace nsolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error { using Error::Error; };
class OverflowError : public Error { using Error::Error; };
class DegenerateCouplingError : public Error { using Error::Error; };
class ResourceError : public Error { using Error::Error; };
class ConvergenceError : public Error { using Error::Error; };
class SingularPointError : public Error { using Error::Error; };
class UnreliableEigenvalueError : public Error { using Error::Error; };
class InvalidKernelError : public Error { using Error::Error; };
class QuadratureError : public Error { using Error::Error; };
class ContourCollisionError : public Error { using Error::Error; };
class RootFindError : public Error { using Error::Error; };

}  // namespace nsolab
