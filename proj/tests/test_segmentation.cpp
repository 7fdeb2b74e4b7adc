#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "rotrate/numdiff.hpp"
#include "rotrate/segmentation.hpp"
#include "test_support.hpp"

using namespace rotrate;

namespace {

OmegaEstimate with_mean(const std::string& id, double mean) {
    OmegaEstimate est;
    est.point_id = id;
    est.mean_omega = mean;
    est.n_valid = 1;
    return est;
}

OmegaEstimate without_mean(const std::string& id) {
    OmegaEstimate est;
    est.point_id = id;
    return est;
}

} // namespace

TEST_CASE("segment_points splits on gaps larger than tol", "[segmentation]") {
    const std::vector<OmegaEstimate> ests = {
        with_mean("a", 0.300), with_mean("b", 0.301), with_mean("c", 0.299),
        with_mean("d", 0.700), with_mean("e", 0.702),
    };
    const auto labeling = segment_points(ests, 0.05);
    REQUIRE(labeling.cluster_omegas.size() == 2);
    CHECK(labeling.assignments.at("a") == labeling.assignments.at("b"));
    CHECK(labeling.assignments.at("b") == labeling.assignments.at("c"));
    CHECK(labeling.assignments.at("d") == labeling.assignments.at("e"));
    CHECK(labeling.assignments.at("a") != labeling.assignments.at("d"));
    CHECK(labeling.cluster_omegas.at(0).consensus_omega == Catch::Approx(0.3).margin(1e-12));
    CHECK(labeling.cluster_omegas.at(0).member_count == 3);
    CHECK(labeling.cluster_omegas.at(1).consensus_omega == Catch::Approx(0.701).margin(1e-12));
    CHECK(labeling.cluster_omegas.at(1).member_count == 2);
    CHECK(labeling.outliers.empty());
}

TEST_CASE("segment_points degenerate inputs", "[segmentation]") {
    const auto single = segment_points({with_mean("only", 0.5)}, 0.1);
    CHECK(single.cluster_omegas.size() == 1);
    CHECK(single.assignments.at("only") == 0);

    const auto all_out = segment_points({without_mean("x"), without_mean("y")}, 0.1);
    CHECK(all_out.cluster_omegas.empty());
    CHECK(all_out.assignments.empty());
    REQUIRE(all_out.outliers.size() == 2);

    const auto mixed = segment_points({with_mean("a", 0.5), without_mean("n")}, 0.1);
    CHECK(mixed.cluster_omegas.size() == 1);
    REQUIRE(mixed.outliers.size() == 1);
    CHECK(mixed.outliers[0] == "n");

    CHECK_THROWS_AS(segment_points({}, 0.1), EmptyInput);
    CHECK_THROWS_AS(segment_points({with_mean("a", 0.5)}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(segment_points({with_mean("a", 0.5), with_mean("a", 0.6)}, 0.1),
                    std::invalid_argument);
}

TEST_CASE("two noiseless bodies separate perfectly", "[segmentation]") {
    const auto fx = testsup::two_body_tracks(0.3, 0.7, 0.0, 1);
    std::vector<OmegaEstimate> ests;
    for (const auto& traj : fx.tracks) {
        ests.push_back(estimate_trajectory(differentiate(traj, DiffScheme::central)));
    }
    const auto labeling = segment_points(ests, 0.05);
    REQUIRE(labeling.cluster_omegas.size() == 2);
    CHECK(labeling.outliers.empty());
    const int cluster_a = labeling.assignments.at("a0");
    const int cluster_b = labeling.assignments.at("b0");
    CHECK(cluster_a != cluster_b);
    for (const auto& id : fx.body_a_ids) {
        CHECK(labeling.assignments.at(id) == cluster_a);
    }
    for (const auto& id : fx.body_b_ids) {
        CHECK(labeling.assignments.at(id) == cluster_b);
    }
    CHECK(labeling.cluster_omegas.at(cluster_a).consensus_omega == Catch::Approx(0.3).margin(0.01));
    CHECK(labeling.cluster_omegas.at(cluster_b).consensus_omega == Catch::Approx(0.7).margin(0.02));
}

TEST_CASE("partition does not depend on input order", "[segmentation]") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> value(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OmegaEstimate> ests;
        for (int i = 0; i < 12; ++i) {
            ests.push_back(with_mean("p" + std::to_string(i), value(rng)));
        }
        const auto reference = segment_points(ests, 0.15);
        std::shuffle(ests.begin(), ests.end(), rng);
        const auto shuffled = segment_points(ests, 0.15);
        CHECK(shuffled.assignments == reference.assignments);
        CHECK(shuffled.outliers == reference.outliers);
    }
}

TEST_CASE("growing tol never increases the cluster count", "[segmentation]") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> value(0.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OmegaEstimate> ests;
        for (int i = 0; i < 15; ++i) {
            ests.push_back(with_mean("p" + std::to_string(i), value(rng)));
        }
        std::size_t previous = ests.size() + 1;
        for (const double tol : {0.01, 0.05, 0.1, 0.3, 1.0, 4.0}) {
            const auto labeling = segment_points(ests, tol);
            CHECK(labeling.cluster_omegas.size() <= previous);
            previous = labeling.cluster_omegas.size();
        }
        CHECK(previous == 1); // tol above the whole range merges everything
    }
}
