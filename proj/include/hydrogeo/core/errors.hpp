#ifndef HYDROGEO_CORE_ERRORS_HPP
#define HYDROGEO_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hydrogeo {

/// Invalid or incomplete input. Carries the source line when known (0 otherwise).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0, const std::string& origin = "")
        : std::runtime_error(format(msg, line, origin)), message_(msg), line_(line)
    {
    }

    int line() const { return line_; }
    /// The message without origin and line prefix.
    const std::string& message() const { return message_; }

private:
    static std::string format(const std::string& msg, int line, const std::string& origin)
    {
        if (origin.empty())
            return line > 0 ? "line " + std::to_string(line) + ": " + msg : msg;
        return origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + msg;
    }

    std::string message_;
    int line_;
};

class DegenerateStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EosError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nonlinear or linear solver failure that the time stepper may recover from by cutting the step.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unrecoverable failure of a time step after all step cuts were spent.
class StepFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hydrogeo

#endif
