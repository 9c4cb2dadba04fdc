#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace passim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input data (files, parameters, models).
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to converge or hit a singular system.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residuals = {})
        : Error(what), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace passim
