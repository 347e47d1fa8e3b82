#ifndef POLYA_ERRORS_HPP
#define POLYA_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace polya {

/// Replacement matrix would be unbalanced or have a negative entry.
struct NonBalancedOrNegativeEntry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A series or extrapolation did not reach its stopping tolerance.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration for the inverse map left its basin or stalled.
struct NewtonDivergence : std::runtime_error {
    NewtonDivergence(const std::string& msg, std::complex<double> last)
        : std::runtime_error(msg), last_iterate(last) {}
    std::complex<double> last_iterate;
};

/// Argument lies outside the domain of the requested evaluation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A residual or consistency check exceeded its threshold.
struct ToleranceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Estimated truncation error of an oscillatory integral above tolerance.
struct TailBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear system in the moment recursion is singular (cannot happen for
/// large urns; kept as an internal consistency guard).
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polya

#endif
