#pragma once

#include <stdexcept>
#include <string>

namespace tte {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Input data that violates a type invariant (unsorted failures, bad file).
class ValidationError : public Error
{
  public:
    using Error::Error;
};

/// Floating-point evaluation cannot deliver a meaningful value.
class NumericError : public Error
{
  public:
    using Error::Error;
};

/// Root finder could not bracket the target value.
class NoRootError : public NumericError
{
  public:
    using NumericError::NumericError;
};

/// Caller-supplied function broke the solver's monotonicity contract.
class ContractError : public Error
{
  public:
    using Error::Error;
};

/// The requested inference method has no answer for this sample.
class UndefinedMethodError : public Error
{
  public:
    using Error::Error;
};

}  // namespace tte
