#pragma once

#include <stdexcept>

namespace splinaf {

// Spline input left the usable span of the control-point table.
struct SpanOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Evaluation requested at a point where the function has no finite value
// (e.g. influence of a sub-linear criterion at zero error).
struct SingularAtZero : std::domain_error {
  using std::domain_error::domain_error;
};

// A Monte-Carlo estimate failed its internal stabilization check.
struct UnstableEstimate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Too many samples hit the guarded denominator in a ratio statistic.
struct RatioBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace splinaf
