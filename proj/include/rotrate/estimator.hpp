#pragma once

// Closed-form rotation-rate recovery from a derivative table.
//
// For a fixated rotating rigid body under orthographic projection the
// horizontal coordinate of any tracked point obeys ydd + (y - o) w^2 = 0,
// so with the fixation point at the rotation axis (o = 0) a single tracked
// point gives w^2 = -ydd / y, and for an unknown axis offset two tracked
// points give w^2 = -(ydd1 - ydd2) / (y1 - y2), which is the same formula
// applied to the difference signal. Only the magnitude of w is recoverable;
// the direction of rotation stays unknown.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotrate/errors.hpp"
#include "rotrate/numdiff.hpp"

namespace rotrate {

enum class InvalidReason { none, negative_omega_sq, near_singular, missing_derivative };

inline std::string to_string(InvalidReason r) {
    switch (r) {
    case InvalidReason::none: return "none";
    case InvalidReason::negative_omega_sq: return "negative_omega_sq";
    case InvalidReason::near_singular: return "near_singular";
    case InvalidReason::missing_derivative: return "missing_derivative";
    }
    return "?";
}

enum class Aggregation { mean, median };

inline std::string to_string(Aggregation a) {
    return a == Aggregation::mean ? "mean" : "median";
}

struct EstimatorConfig {
    /// A sample is near-singular when |y| < singular_eps_rel * max|y| over
    /// its series; the ratio -ydd/y blows up as the tracked point crosses
    /// the fixation line. Relative scaling keeps the rule unit-free.
    double singular_eps_rel = 0.05;
    Aggregation aggregation = Aggregation::mean;
};

/// Per-timestamp result. omega_sq is the raw signed ratio (recorded even
/// for near-singular rows, where it spikes); omega is present iff the
/// sample is valid, and is a magnitude.
struct OmegaSample {
    double t = 0.0;
    std::optional<double> omega_sq;
    std::optional<double> omega;
    bool valid = false;
    InvalidReason reason = InvalidReason::none;
};

struct OmegaEstimate {
    std::string point_id;
    std::vector<OmegaSample> samples; // aligned 1:1 with the input rows
    std::optional<double> mean_omega;
    std::optional<double> median_omega;
    std::optional<double> std_omega; // population standard deviation
    std::size_t n_valid = 0;
    Aggregation aggregation = Aggregation::mean;
    /// Two-point estimates only: mean recovered horizontal offset of the
    /// rotation axis from the fixation point.
    std::optional<double> center_offset;

    /// The aggregate selected by the configuration.
    std::optional<double> value() const {
        return aggregation == Aggregation::mean ? mean_omega : median_omega;
    }
};

/// w^2 = -ydd / y for a fixation point at the rotation axis. May be
/// negative on noisy data; callers screen y == 0 via the validity rules.
inline double omega_sq_single(double y, double ydd) {
    if (y == 0.0) {
        throw ZeroDisplacement("omega_sq_single requires y != 0");
    }
    return -ydd / y;
}

/// w^2 = -(ydd1 - ydd2) / (y1 - y2): the unknown-center form. Identical to
/// omega_sq_single applied to the difference signal y1 - y2.
inline double omega_sq_two_point(double y1, double ydd1, double y2, double ydd2) {
    const double dy = y1 - y2;
    if (dy == 0.0) {
        throw CoincidentDisplacements("omega_sq_two_point requires y1 != y2");
    }
    return -(ydd1 - ydd2) / dy;
}

/// Horizontal coordinate of the rotation axis relative to the fixation
/// point, o = y + ydd / w^2.
inline double recover_center_offset(double y, double ydd, double omega_sq) {
    if (!(omega_sq > 0.0)) {
        throw NonPositiveOmegaSq("recover_center_offset requires omega_sq > 0");
    }
    return y + ydd / omega_sq;
}

/// Applies the validity rules to one sample. y_scale is the reference
/// amplitude of the series (max |y|); a non-positive y_scale marks every
/// non-missing row near-singular (degenerate all-zero series).
inline OmegaSample classify_sample(double t, double y, bool ydd_present,
                                   std::optional<double> omega_sq_raw,
                                   const EstimatorConfig& cfg, double y_scale) {
    OmegaSample s;
    s.t = t;
    s.omega_sq = omega_sq_raw;
    if (!ydd_present) {
        s.reason = InvalidReason::missing_derivative;
        return s;
    }
    if (!(y_scale > 0.0) || std::abs(y) < cfg.singular_eps_rel * y_scale || y == 0.0) {
        s.reason = InvalidReason::near_singular;
        return s;
    }
    if (*omega_sq_raw < 0.0) {
        s.reason = InvalidReason::negative_omega_sq;
        return s;
    }
    s.valid = true;
    s.omega = std::sqrt(*omega_sq_raw);
    return s;
}

namespace detail {

inline void validate(const EstimatorConfig& cfg) {
    if (!(cfg.singular_eps_rel >= 0.0 && cfg.singular_eps_rel < 1.0)) {
        throw std::invalid_argument("singular_eps_rel must be in [0, 1)");
    }
}

// Aggregates in index order so results do not depend on evaluation order.
inline void aggregate_valid(OmegaEstimate& est) {
    std::vector<double> omegas;
    for (const auto& s : est.samples) {
        if (s.valid) {
            omegas.push_back(*s.omega);
        }
    }
    est.n_valid = omegas.size();
    if (omegas.empty()) {
        return;
    }
    double sum = 0.0;
    for (double w : omegas) {
        sum += w;
    }
    const double mean = sum / static_cast<double>(omegas.size());
    est.mean_omega = mean;

    std::vector<double> sorted = omegas;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    est.median_omega = (n % 2 == 1) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;

    double ss = 0.0;
    for (double w : omegas) {
        const double d = w - mean;
        ss += d * d;
    }
    est.std_omega = std::sqrt(ss / static_cast<double>(omegas.size()));
}

} // namespace detail

/// Runs the single-point estimator over a derivative table and aggregates
/// the valid samples.
inline OmegaEstimate estimate_trajectory(const DerivativeSeries& series,
                                         const EstimatorConfig& cfg = {}) {
    detail::validate(cfg);
    OmegaEstimate est;
    est.point_id = series.point_id;
    est.aggregation = cfg.aggregation;
    double y_scale = 0.0;
    for (const auto& row : series.rows) {
        y_scale = std::max(y_scale, std::abs(row.y));
    }
    est.samples.reserve(series.rows.size());
    for (const auto& row : series.rows) {
        std::optional<double> raw;
        if (row.ydd && row.y != 0.0) {
            raw = omega_sq_single(row.y, *row.ydd);
        }
        est.samples.push_back(classify_sample(row.t, row.y, row.ydd.has_value(), raw, cfg, y_scale));
    }
    detail::aggregate_valid(est);
    return est;
}

/// Two-point estimator for an unknown rotation center. The two series must
/// share timestamps exactly; validity is judged against the difference
/// signal, whose amplitude is the effective displacement here. Also reports
/// the mean recovered center offset over valid samples.
inline OmegaEstimate estimate_two_point_trajectory(const DerivativeSeries& s1,
                                                   const DerivativeSeries& s2,
                                                   const EstimatorConfig& cfg = {}) {
    detail::validate(cfg);
    if (s1.rows.size() != s2.rows.size()) {
        throw TimestampMismatch("series '" + s1.point_id + "' and '" + s2.point_id +
                                "' have different lengths");
    }
    for (std::size_t k = 0; k < s1.rows.size(); ++k) {
        if (s1.rows[k].t != s2.rows[k].t) {
            throw TimestampMismatch("series '" + s1.point_id + "' and '" + s2.point_id +
                                    "' disagree at sample " + std::to_string(k));
        }
    }

    OmegaEstimate est;
    est.point_id = s1.point_id + "+" + s2.point_id;
    est.aggregation = cfg.aggregation;
    double y_scale = 0.0;
    for (std::size_t k = 0; k < s1.rows.size(); ++k) {
        y_scale = std::max(y_scale, std::abs(s1.rows[k].y - s2.rows[k].y));
    }

    std::vector<double> offsets;
    est.samples.reserve(s1.rows.size());
    for (std::size_t k = 0; k < s1.rows.size(); ++k) {
        const DerivativeRow& r1 = s1.rows[k];
        const DerivativeRow& r2 = s2.rows[k];
        const double dy = r1.y - r2.y;
        const bool ydd_present = r1.ydd.has_value() && r2.ydd.has_value();
        std::optional<double> raw;
        if (ydd_present && dy != 0.0) {
            raw = omega_sq_two_point(r1.y, *r1.ydd, r2.y, *r2.ydd);
        }
        OmegaSample s = classify_sample(r1.t, dy, ydd_present, raw, cfg, y_scale);
        if (s.valid && *s.omega_sq > 0.0) {
            offsets.push_back(recover_center_offset(r1.y, *r1.ydd, *s.omega_sq));
        }
        est.samples.push_back(s);
    }
    detail::aggregate_valid(est);
    if (!offsets.empty()) {
        double sum = 0.0;
        for (double o : offsets) {
            sum += o;
        }
        est.center_offset = sum / static_cast<double>(offsets.size());
    }
    return est;
}

/// Estimates every series, fanning trajectories out across threads when
/// there are enough of them. Estimation is pure, so the result is
/// identical to the serial loop.
inline std::vector<OmegaEstimate> estimate_trajectories(const std::vector<DerivativeSeries>& series,
                                                        const EstimatorConfig& cfg = {}) {
    std::vector<OmegaEstimate> out(series.size());
    if (series.size() < 4) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            out[i] = estimate_trajectory(series[i], cfg);
        }
        return out;
    }
    std::vector<std::future<OmegaEstimate>> futures;
    futures.reserve(series.size());
    for (const auto& s : series) {
        futures.push_back(std::async(std::launch::async, [&s, &cfg] { return estimate_trajectory(s, cfg); }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
        out[i] = futures[i].get();
    }
    return out;
}

} // namespace rotrate
