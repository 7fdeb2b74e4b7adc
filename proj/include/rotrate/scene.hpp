#pragma once

// Fixated rotating rigid body and camera models; synthesizes the horizontal
// image trajectories that tracked feature points trace out.
//
// Geometry: the camera fixates a stationary point, which defines the image
// origin. The body rotates at constant rate omega about a vertical axis at
// horizontal offset `center_offset` from the fixation point, so a body point
// with cylinder radius R and initial angle theta0 sits at horizontal world
// coordinate o + R cos(theta0 + omega t). The rotation axis is perpendicular
// to the optical axis.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotrate/errors.hpp"
#include "rotrate/numdiff.hpp"
#include "rotrate/trajectory.hpp"

namespace rotrate {

/// Maps an angle into [0, 2*pi).
inline double normalize_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    if (r >= two_pi) {
        r = 0.0;
    }
    return r;
}

/// A feature point on the rigid body, in cylindrical form about the
/// rotation axis. Height is carried for bookkeeping only; the estimator
/// consumes horizontal motion exclusively.
struct BodyPoint {
    double radius;
    double phase; // normalized to [0, 2*pi)
    double height;
    std::string label;

    explicit BodyPoint(double radius_, double phase_, double height_ = 0.0, std::string label_ = "")
        : radius(radius_), phase(normalize_angle(phase_)), height(height_), label(std::move(label_)) {
        if (!(radius >= 0.0)) {
            throw std::invalid_argument("BodyPoint radius must be >= 0");
        }
    }
};

/// Constant-rate rotation. omega is signed: positive for anticlockwise,
/// negative for clockwise. center_offset is the horizontal distance from
/// the fixation point to the rotation axis (0 when they coincide).
struct MotionProfile {
    double omega = 0.0;
    double center_offset = 0.0;
};

struct CameraModel {
    enum class Kind { orthographic, perspective };

    Kind kind = Kind::orthographic;
    double focal_length = 1.0; // perspective only
    double standoff = 1.0;     // perspective only: camera-to-fixation distance

    static CameraModel orthographic() { return {}; }

    static CameraModel perspective(double focal_length, double standoff) {
        if (!(focal_length > 0.0)) {
            throw std::invalid_argument("focal_length must be > 0");
        }
        if (!(standoff > 0.0)) {
            throw std::invalid_argument("standoff must be > 0");
        }
        return {Kind::perspective, focal_length, standoff};
    }
};

/// A rigid scene: every point shares one motion profile.
struct RigidScene {
    std::vector<BodyPoint> points;
    MotionProfile motion;
    double depth_of_axis = 0.0; // camera-to-axis distance, perspective only
};

struct SamplingPlan {
    double t_start = 0.0;
    double dt = 0.0;
    std::size_t n_samples = 0; // >= 3: three instants bound a second derivative
};

/// Horizontal world coordinate of a body point at time t, relative to the
/// fixation point: o + R cos(theta0 + omega t).
inline double horizontal_position(const BodyPoint& p, const MotionProfile& m, double t) {
    return m.center_offset + p.radius * std::cos(p.phase + m.omega * t);
}

struct DerivativeTriple {
    double y;
    double yd;
    double ydd;
};

/// Closed-form y, dy/dt, d2y/dt2 of the orthographic trajectory. Serves as
/// the exact oracle for finite-difference schemes; note ydd = -(y - o) w^2.
inline DerivativeTriple analytic_derivatives(const BodyPoint& p, const MotionProfile& m, double t) {
    const double theta = p.phase + m.omega * t;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {
        m.center_offset + p.radius * c,
        -p.radius * m.omega * s,
        -p.radius * m.omega * m.omega * c,
    };
}

/// Projects a world point into image coordinates. Orthographic projection is
/// the identity on the horizontal coordinate; perspective is a pinhole,
/// f * y / z, and requires the point strictly in front of the camera.
inline double project(const CameraModel& cam, double world_horizontal, double world_depth) {
    if (cam.kind == CameraModel::Kind::orthographic) {
        return world_horizontal;
    }
    if (!(world_depth > 0.0)) {
        throw NonPositiveDepth("point at depth " + std::to_string(world_depth) +
                               " is at or behind the camera plane");
    }
    return cam.focal_length * world_horizontal / world_depth;
}

inline void validate(const SamplingPlan& plan) {
    if (!(plan.dt > 0.0)) {
        throw std::invalid_argument("dt must be > 0");
    }
    if (plan.n_samples < 3) {
        throw std::invalid_argument("n_samples must be >= 3");
    }
}

/// Samples the image trajectory of every body point. Pure and
/// deterministic; per-point and per-timestamp evaluation is independent.
/// The fixation point projects to the image origin in both camera models,
/// so trajectories come out fixation-relative.
inline std::vector<TrackedTrajectory> simulate(const RigidScene& scene, const CameraModel& cam,
                                               const SamplingPlan& plan) {
    validate(plan);
    if (scene.points.empty()) {
        throw std::invalid_argument("scene must contain at least one point");
    }
    const bool perspective = cam.kind == CameraModel::Kind::perspective;
    if (perspective && !(scene.depth_of_axis > 0.0)) {
        throw std::invalid_argument("depth_of_axis must be > 0 for a perspective camera");
    }

    std::vector<TrackedTrajectory> out;
    out.reserve(scene.points.size());
    for (std::size_t i = 0; i < scene.points.size(); ++i) {
        const BodyPoint& p = scene.points[i];
        TrackedTrajectory traj;
        traj.point_id = p.label.empty() ? "p" + std::to_string(i) : p.label;
        traj.samples.reserve(plan.n_samples);
        for (std::size_t k = 0; k < plan.n_samples; ++k) {
            const double t = plan.t_start + static_cast<double>(k) * plan.dt;
            const double theta = p.phase + scene.motion.omega * t;
            const double yw = scene.motion.center_offset + p.radius * std::cos(theta);
            double yi;
            if (perspective) {
                const double depth = scene.depth_of_axis + p.radius * std::sin(theta);
                yi = project(cam, yw, depth);
            } else {
                yi = yw;
            }
            traj.samples.push_back({t, yi});
        }
        out.push_back(std::move(traj));
    }
    return out;
}

/// Adds i.i.d. zero-mean Gaussian perturbation to every y sample.
/// sigma = 0 returns the input unchanged; a fixed seed fixes the output.
inline std::vector<TrackedTrajectory> add_noise(const std::vector<TrackedTrajectory>& trajs,
                                                double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw NegativeSigma("sigma must be >= 0");
    }
    if (sigma == 0.0) {
        return trajs;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    std::vector<TrackedTrajectory> out = trajs;
    for (auto& traj : out) {
        for (auto& sample : traj.samples) {
            sample.y += gauss(rng);
        }
    }
    return out;
}

/// Derivative tables straight from the closed forms, bypassing finite
/// differences (scheme tag: analytic). Orthographic projection only.
inline std::vector<DerivativeSeries> analytic_derivative_series(const RigidScene& scene,
                                                               const SamplingPlan& plan) {
    validate(plan);
    if (scene.points.empty()) {
        throw std::invalid_argument("scene must contain at least one point");
    }
    std::vector<DerivativeSeries> out;
    out.reserve(scene.points.size());
    for (std::size_t i = 0; i < scene.points.size(); ++i) {
        const BodyPoint& p = scene.points[i];
        DerivativeSeries series;
        series.point_id = p.label.empty() ? "p" + std::to_string(i) : p.label;
        series.scheme = DiffScheme::analytic;
        series.rows.reserve(plan.n_samples);
        for (std::size_t k = 0; k < plan.n_samples; ++k) {
            const double t = plan.t_start + static_cast<double>(k) * plan.dt;
            const DerivativeTriple d = analytic_derivatives(p, scene.motion, t);
            series.rows.push_back({t, d.y, d.yd, d.ydd});
        }
        out.push_back(std::move(series));
    }
    return out;
}

} // namespace rotrate
