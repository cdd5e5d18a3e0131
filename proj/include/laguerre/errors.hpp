#pragma once
#include <stdexcept>
#include <string>

namespace laguerre {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class MarginError : public Error { using Error::Error; };
class ImmersionError : public Error { using Error::Error; };
class UmbilicError : public Error { using Error::Error; };
class VanishingCurvatureError : public Error { using Error::Error; };
class DegeneracyError : public Error { using Error::Error; };
class ParameterError : public Error { using Error::Error; };
class InputError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };

}  // namespace laguerre
