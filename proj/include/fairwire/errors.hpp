#pragma once

#include <stdexcept>
#include <string>

namespace fairwire {

/// Malformed or out-of-contract input (bad files, bad ids, out-of-range
/// parameters, refused problem sizes). CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal solver failure (LP numerical breakdown, violated self-checks,
/// resource guards). CLI maps this to exit code 3.
struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fairwire
