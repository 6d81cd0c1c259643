// errors.hpp — exception hierarchy shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace decobec {

// Base class for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad inputs: violated preconditions, malformed configs, unknown keys.
struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& what) : Error(what) {}
};

// A numerical routine could not reach the requested accuracy.  Carries the
// best estimate obtained so far so callers can decide whether to keep it.
struct AccuracyError : Error {
    AccuracyError(const std::string& what, double best)
        : Error(what), best_estimate(best) {}
    double best_estimate;
};

// A requested computation exceeds a configured resource cap.
struct ResourceError : Error {
    explicit ResourceError(const std::string& what) : Error(what) {}
};

} // namespace decobec
