#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vfstab {

// Raised when a numerical routine cannot produce a finite answer: evaluation
// at a pole, a degenerate feedback closure, or a diverging simulation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Frequency-response evaluation hit a pole of the transfer function.
class PoleEvaluationError : public NumericalError {
public:
    PoleEvaluationError(const std::string& what, double omega)
        : NumericalError(what), omega_(omega) {}

    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

// Simulation state became non-finite at time `time`.
class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string& what, double time)
        : NumericalError(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

// Malformed configuration text or an invalid value. line() is 0 when the
// problem does not come from a specific line (e.g. a --set override).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string field, int line = 0)
        : std::runtime_error(what), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

}  // namespace vfstab
