#pragma once

#include <stdexcept>

namespace fplan {

/// Base class for all errors raised by the planning library.
struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (not parseable as JSON).
struct ParseError : PlanningError {
  using PlanningError::PlanningError;
};

/// Structurally valid input violating a documented invariant. The message
/// names the first violated invariant and the offending id.
struct ValidationError : PlanningError {
  using PlanningError::PlanningError;
};

/// The goal lanelet cannot be reached in the lanelet graph.
struct NoRouteError : PlanningError {
  using PlanningError::PlanningError;
};

/// A route whose concatenated center line is too short to smooth.
struct DegenerateRouteError : PlanningError {
  using PlanningError::PlanningError;
};

/// The queried position does not project onto the path interior.
struct ProjectionError : PlanningError {
  using PlanningError::PlanningError;
};

/// The curvilinear transform is not bijective at the queried state
/// (|d * kappa_r| >= 1).
struct SingularityError : PlanningError {
  using PlanningError::PlanningError;
};

/// A cost integrand evaluated to a non-finite value; the sample is degenerate
/// and must be discarded by the caller.
struct NonFiniteCostError : PlanningError {
  using PlanningError::PlanningError;
};

/// Not even the stopping fallback produced a feasible trajectory.
struct PlanningFailure : PlanningError {
  using PlanningError::PlanningError;
};

}  // namespace fplan
