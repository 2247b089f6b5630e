#pragma once

#include <stdexcept>
#include <string>

namespace ivc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Great-circle interpolation between antipodal directions.
class DegenerateArcError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Operation called on a layout of the wrong technique.
class WrongTechniqueError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error
{
public:
    ParseError(int line, const std::string &what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line)
    {
    }

    int line() const { return line_; }

private:
    int line_;
};

/// Well-formed input that violates a data invariant.
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace ivc
