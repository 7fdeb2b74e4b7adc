#pragma once

#include <string>
#include <vector>

namespace rotrate {

/// One observation of a tracked feature: time and horizontal image
/// coordinate measured relative to the fixation point.
struct TrajectorySample {
    double t;
    double y;
};

struct TrackedTrajectory {
    std::string point_id;
    std::vector<TrajectorySample> samples; // timestamps strictly increasing
};

} // namespace rotrate
