#pragma once

#include <stdexcept>
#include <string>

namespace evk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid graph construction input (bad edge, self-loop in strict mode).
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// A dataset file is missing or unreadable.
class IngestionError : public Error {
public:
    using Error::Error;
};

/// A dataset file is readable but malformed.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Eigensolver failure.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Inputs violate a structural precondition (mismatched lengths, grids).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Invalid user configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// SVM training could not be set up.
class TrainingError : public Error {
public:
    using Error::Error;
};

/// Wraps a lower-level error with the pipeline stage it came from.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace evk
