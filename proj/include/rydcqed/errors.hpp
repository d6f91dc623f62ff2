// errors.hpp — exception types thrown by the simulator

#pragma once

#include <stdexcept>
#include <string>

namespace rydcqed {

// Base for every error raised by this library. `kind()` is a stable
// machine-readable tag used by the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct IndexError : Error {
    explicit IndexError(const std::string& w) : Error("index", w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error("config", w) {}
};
struct ParameterError : Error {
    explicit ParameterError(const std::string& w) : Error("parameter", w) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error("dimension", w) {}
};
struct CapacityError : Error {
    explicit CapacityError(const std::string& w) : Error("capacity", w) {}
};
struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error("numerical", w) {}
};
struct IntegratorError : Error {
    explicit IntegratorError(const std::string& w) : Error("integrator", w) {}
};
struct InvalidJumpError : Error {
    explicit InvalidJumpError(const std::string& w) : Error("invalid-jump", w) {}
};
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& w) : Error("degeneracy", w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error("io", w) {}
};

} // namespace rydcqed
