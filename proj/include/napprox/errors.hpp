#ifndef NAPPROX_ERRORS_HPP
#define NAPPROX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace napprox {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// field construction
struct ReducibleError : Error {
  using Error::Error;
};
struct NoRealRootError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

// adaptive precision hit its cap before a comparison could be resolved
struct PrecisionExhausted : Error {
  using Error::Error;
};

struct SingularGram : Error {
  using Error::Error;
};

struct SearchExhausted : Error {
  using Error::Error;
};

struct NonIntegerTrace : Error {
  using Error::Error;
};

struct ZeroQ : Error {
  using Error::Error;
};

struct WrongDimension : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace napprox

#endif
