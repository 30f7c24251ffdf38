#pragma once

#include <stdexcept>
#include <string>

namespace jcl {

enum class ErrorCode {
    NonPositiveOmega,
    NonPositiveSpacing,
    ZeroCutoff,
    NonFiniteField,
    OutOfBand,
    BandEdgeSingularity,
    SingularLinearSystem,
    QuadratureNotConverged,
    CutoffNotConverged,
    ScenarioAssertionFailed,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by validate(); field() names the offending config entry.
class ConfigError : public Error {
public:
    ConfigError(ErrorCode code, std::string field, const std::string& what)
        : Error(code, field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Quadrature or cutoff loop gave up; achieved() is the error estimate reached.
class ConvergenceError : public Error {
public:
    ConvergenceError(ErrorCode code, double achieved, const std::string& what)
        : Error(code, what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace jcl
