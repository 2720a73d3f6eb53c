#pragma once

namespace lifeinfo {

/// Value of an information measure with its numerical error estimate.
struct MeasureResult {
    double value = 0.0;
    double numerical_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

} // namespace lifeinfo
