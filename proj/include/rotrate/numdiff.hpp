#pragma once

// Finite-difference time derivatives of sampled trajectories.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotrate/errors.hpp"
#include "rotrate/trajectory.hpp"

namespace rotrate {

enum class DiffScheme {
    backward, // one-sided chain, works on non-uniform grids
    central,  // second-order, uniform grid only
    analytic, // closed-form derivatives (produced by the scene model)
};

inline std::string to_string(DiffScheme s) {
    switch (s) {
    case DiffScheme::backward: return "backward";
    case DiffScheme::central: return "central";
    case DiffScheme::analytic: return "analytic";
    }
    return "?";
}

/// One aligned row of a derivative table. A derivative is absent where the
/// scheme's stencil is incomplete (leading rows for backward, first and
/// last for central); absent cells are never filled with zeros.
struct DerivativeRow {
    double t;
    double y;
    std::optional<double> yd;
    std::optional<double> ydd;
};

struct DerivativeSeries {
    std::string point_id;
    std::vector<DerivativeRow> rows;
    DiffScheme scheme;
};

/// Differentiates a trajectory twice with the requested scheme.
///
/// backward: yd_k = (y_k - y_{k-1}) / (t_k - t_{k-1}), and ydd is the
/// backward difference of those first differences over the same local
/// interval. central: yd_k = (y_{k+1} - y_{k-1}) / 2dt and
/// ydd_k = (y_{k+1} - 2 y_k + y_{k-1}) / dt^2 on a uniform grid.
inline DerivativeSeries differentiate(const TrackedTrajectory& traj, DiffScheme scheme) {
    const auto& s = traj.samples;
    const std::size_t n = s.size();
    if (n < 3) {
        throw TooFewSamples("trajectory '" + traj.point_id + "' has " + std::to_string(n) +
                            " samples; at least 3 are required for a second derivative");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (!(s[k].t > s[k - 1].t)) {
            throw NonMonotonicTime("trajectory '" + traj.point_id +
                                   "' timestamps must be strictly increasing (sample " +
                                   std::to_string(k) + ")");
        }
    }
    if (scheme == DiffScheme::analytic) {
        throw std::invalid_argument("analytic series come from the scene model, not from differentiate()");
    }

    DerivativeSeries out{traj.point_id, {}, scheme};
    out.rows.reserve(n);
    for (const auto& sample : s) {
        out.rows.push_back({sample.t, sample.y, std::nullopt, std::nullopt});
    }

    if (scheme == DiffScheme::backward) {
        std::vector<double> yd(n, 0.0);
        for (std::size_t k = 1; k < n; ++k) {
            const double dt = s[k].t - s[k - 1].t;
            yd[k] = (s[k].y - s[k - 1].y) / dt;
            out.rows[k].yd = yd[k];
        }
        for (std::size_t k = 2; k < n; ++k) {
            const double dt = s[k].t - s[k - 1].t;
            out.rows[k].ydd = (yd[k] - yd[k - 1]) / dt;
        }
        return out;
    }

    // central
    const double dt_ref = (s[n - 1].t - s[0].t) / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((s[k].t - s[k - 1].t) - dt_ref) >= 1e-9 * dt_ref) {
            throw NonUniformSampling("trajectory '" + traj.point_id +
                                     "' is not uniformly sampled; the central scheme requires a uniform grid");
        }
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out.rows[k].yd = (s[k + 1].y - s[k - 1].y) / (2.0 * dt_ref);
        out.rows[k].ydd = (s[k + 1].y - 2.0 * s[k].y + s[k - 1].y) / (dt_ref * dt_ref);
    }
    return out;
}

} // namespace rotrate
