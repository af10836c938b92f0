#ifndef SIMDIAG_ERRORS_HPP
#define SIMDIAG_ERRORS_HPP

#include <stdexcept>

namespace simdiag {

/// A state point violates the model's domain guard, or a trajectory left the domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A field evaluation or derived quantity produced a non-finite value.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The field magnitude is below the equilibrium threshold; no trajectory frame exists.
struct EquilibriumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two tangent vectors span a numerically degenerate plane.
struct DegeneratePlaneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation requires a different state dimension than the model provides.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Fiber search could not produce a maximizer (every sample unusable).
struct FiberError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace simdiag

#endif
