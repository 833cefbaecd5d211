#pragma once

#include <stdexcept>
#include <string>

namespace cvbench {

// Base class for all errors raised by the library. The `context` string
// identifies the module and operation; messages carry the offending cell,
// column, or argument so failures can be located without a debugger.
class Error : public std::runtime_error {
public:
    Error(std::string context, const std::string& message)
        : std::runtime_error(context + ": " + message), context_(std::move(context)) {}
    const std::string& context() const { return context_; }

private:
    std::string context_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// A performance measure that is mathematically undefined for the given
// cell (e.g., PPV with zero predicted positives). Never reported as NaN.
class UndefinedMeasureError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cvbench
