#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fparadox {

/// Bad caller input: malformed graphs, out-of-range parameters, wrong orientation.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative kernel did not reach its tolerance. Carries the best iterate seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_iterate, double residual)
        : std::runtime_error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

    const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> best_iterate_;
    double residual_;
};

/// Exact walk arithmetic exceeded the 128-bit range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A check that is guaranteed by a theorem came out false. Signals a bug, not a finding.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace fparadox
