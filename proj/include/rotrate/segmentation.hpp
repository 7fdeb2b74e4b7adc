#pragma once

// Groups tracked points into rigid-body clusters by agreement of their
// recovered rotation rates. Points on the fixated body share one omega;
// points that do not are either another body or independent movers.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotrate/errors.hpp"
#include "rotrate/estimator.hpp"

namespace rotrate {

struct ClusterSummary {
    double consensus_omega; // unweighted mean of member mean_omega values
    std::size_t member_count;
};

struct SegmentLabeling {
    std::map<std::string, int> assignments;      // point_id -> cluster_id
    std::map<int, ClusterSummary> cluster_omegas;
    std::vector<std::string> outliers;           // points with no valid samples
};

/// Single-linkage clustering on the 1-D axis of mean omega values: sort,
/// then cut wherever the gap between neighbors exceeds tol. Cluster ids are
/// assigned in ascending omega order, so the labeling is deterministic and
/// independent of input order.
inline SegmentLabeling segment_points(const std::vector<OmegaEstimate>& estimates, double tol) {
    if (estimates.empty()) {
        throw EmptyInput("segment_points requires at least one estimate");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be > 0");
    }

    SegmentLabeling labeling;
    std::set<std::string> seen;
    std::vector<std::pair<double, std::string>> members;
    members.reserve(estimates.size());
    for (const auto& est : estimates) {
        if (!seen.insert(est.point_id).second) {
            throw std::invalid_argument("duplicate point_id '" + est.point_id + "'");
        }
        if (est.mean_omega) {
            members.emplace_back(*est.mean_omega, est.point_id);
        } else {
            labeling.outliers.push_back(est.point_id);
        }
    }
    std::sort(labeling.outliers.begin(), labeling.outliers.end());
    if (members.empty()) {
        return labeling;
    }

    std::sort(members.begin(), members.end());
    int cluster_id = 0;
    double sum = members[0].first;
    std::size_t count = 1;
    labeling.assignments[members[0].second] = cluster_id;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].first - members[i - 1].first > tol) {
            labeling.cluster_omegas[cluster_id] = {sum / static_cast<double>(count), count};
            ++cluster_id;
            sum = 0.0;
            count = 0;
        }
        labeling.assignments[members[i].second] = cluster_id;
        sum += members[i].first;
        ++count;
    }
    labeling.cluster_omegas[cluster_id] = {sum / static_cast<double>(count), count};
    return labeling;
}

} // namespace rotrate
