#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rotrate/numdiff.hpp"
#include "rotrate/trackio.hpp"
#include "table1_cells.hpp"

using namespace rotrate;

TEST_CASE("parse_tracks reads a minimal file", "[trackio]") {
    const auto parsed = parse_tracks("t,point_id,y\n0.0,f1,-3.26\n0.533,f1,-3.26\n");
    REQUIRE(parsed.trajectories.size() == 1);
    CHECK(parsed.trajectories[0].point_id == "f1");
    REQUIRE(parsed.trajectories[0].samples.size() == 2);
    CHECK(parsed.trajectories[0].samples[0].y == -3.26);
    CHECK(parsed.trajectories[0].samples[1].t == 0.533);
    CHECK(parsed.units.empty());
}

TEST_CASE("parse_tracks accepts comments, CRLF, and a units header", "[trackio]") {
    const auto parsed = parse_tracks("# produced by hand\r\n# units: inches\r\n"
                                     "t,point_id,y\r\n1.0,a,2.0\r\n0.0,a,1.0\r\n0.5,b,9.0\r\n");
    REQUIRE(parsed.trajectories.size() == 2);
    CHECK(parsed.units == "inches");
    // grouped by point, sorted by time
    CHECK(parsed.trajectories[0].point_id == "a");
    CHECK(parsed.trajectories[0].samples[0].t == 0.0);
    CHECK(parsed.trajectories[0].samples[1].t == 1.0);
    CHECK(parsed.trajectories[1].point_id == "b");
}

TEST_CASE("parse_tracks rejects malformed input", "[trackio]") {
    CHECK_THROWS_AS(parse_tracks(""), EmptyFile);
    CHECK_THROWS_AS(parse_tracks("# only a comment\n"), EmptyFile);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\n"), EmptyFile);
    CHECK_THROWS_AS(parse_tracks("time,id,pos\n0,a,1\n"), MalformedHeader);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\n0.0,f1,abc\n"), NonNumericField);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\n0.0,f1\n"), NonNumericField);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\nx,f1,1.0\n"), NonNumericField);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\n0.0,f1,inf\n"), NonNumericField);
    CHECK_THROWS_AS(parse_tracks("t,point_id,y\n0.0,f1,1\n0.0,f1,2\n"), DuplicateTimestamp);

    try {
        parse_tracks("t,point_id,y\n0.0,f1,abc\n");
        FAIL("expected NonNumericField");
    } catch (const NonNumericField& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("write then parse reproduces trajectories exactly", "[trackio]") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> value(-1e6, 1e6);
    std::uniform_real_distribution<double> step(1e-6, 10.0);
    std::vector<TrackedTrajectory> trajs(3);
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        trajs[i].point_id = "pt" + std::to_string(i);
        double t = value(rng) * 1e-3;
        for (int k = 0; k < 40; ++k) {
            trajs[i].samples.push_back({t, value(rng)});
            t += step(rng);
        }
    }
    const auto parsed = parse_tracks(write_tracks(trajs, "inches"));
    CHECK(parsed.units == "inches");
    REQUIRE(parsed.trajectories.size() == trajs.size());
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        REQUIRE(parsed.trajectories[i].samples.size() == trajs[i].samples.size());
        for (std::size_t k = 0; k < trajs[i].samples.size(); ++k) {
            CHECK(parsed.trajectories[i].samples[k].t == trajs[i].samples[k].t);
            CHECK(parsed.trajectories[i].samples[k].y == trajs[i].samples[k].y);
        }
    }

    TrackedTrajectory bad;
    bad.point_id = "has,comma";
    bad.samples = {{0.0, 1.0}};
    CHECK_THROWS_AS(write_tracks({bad}), std::invalid_argument);
}

TEST_CASE("table1_fixture is the embedded reference dataset", "[trackio]") {
    const auto fixture = table1_fixture();
    REQUIRE(fixture.size() == 2);
    CHECK(fixture[0].point_id == "feature1");
    CHECK(fixture[1].point_id == "feature2");
    REQUIRE(fixture[0].samples.size() == 10);
    REQUIRE(fixture[1].samples.size() == 11);

    CHECK(fixture[0].samples[3].y == -3.14);
    CHECK(fixture[1].samples[0].t == 0.0);
    CHECK(fixture[1].samples[10].y == -1.93);
    for (std::size_t k = 0; k < fixture[1].samples.size(); ++k) {
        CHECK(fixture[1].samples[k].t ==
              Catch::Approx(static_cast<double>(k) * table1::dt).margin(1e-12));
    }

    // stable across calls
    const auto again = table1_fixture();
    for (std::size_t k = 0; k < fixture[0].samples.size(); ++k) {
        CHECK(again[0].samples[k].y == fixture[0].samples[k].y);
        CHECK(again[0].samples[k].t == fixture[0].samples[k].t);
    }

    // survives a trip through the track-file format
    const auto reread = parse_tracks(write_tracks(fixture)).trajectories;
    REQUIRE(reread.size() == 2);
    CHECK(reread[0].samples.size() == 10);
    CHECK(reread[1].samples.size() == 11);
    CHECK(reread[1].samples[10].y == -1.93);
}

TEST_CASE("write_estimates produces a valid document", "[trackio]") {
    CHECK_NOTHROW(validate_estimates_document(nlohmann::json::parse(write_estimates({}))));
    const auto empty = nlohmann::json::parse(write_estimates({}));
    CHECK(empty["points"].empty());

    const auto tracks = table1_fixture();
    std::vector<OmegaEstimate> ests;
    for (const auto& traj : tracks) {
        ests.push_back(estimate_trajectory(differentiate(traj, DiffScheme::backward)));
    }
    const std::string text = write_estimates(ests);
    const auto doc = nlohmann::json::parse(text);
    CHECK_NOTHROW(validate_estimates_document(doc));

    REQUIRE(doc["points"].size() == 2);
    const auto& f1 = doc["points"][0];
    CHECK(f1["point_id"] == "feature1");
    CHECK(f1["direction"] == "unknown");
    CHECK(f1["n_valid"] == 6);
    // 6 significant digits; reads 0.31 at 2-decimal display
    const double mean = f1["mean_omega"].get<double>();
    CHECK(mean == 0.3124);
    CHECK(std::round(mean * 100.0) / 100.0 == 0.31);
    CHECK(f1["samples"].size() == 10);
    CHECK(f1["samples"][0]["invalid_reason"] == "missing_derivative");
    CHECK(f1["samples"][0]["omega_sq"].is_null());

    // a two-cluster labeling round-trips through the same schema
    const SegmentLabeling labeling = segment_points(ests, 0.2);
    const auto doc2 = nlohmann::json::parse(write_estimates(ests, &labeling));
    CHECK_NOTHROW(validate_estimates_document(doc2));
    REQUIRE(doc2.contains("segmentation"));
    CHECK(doc2["segmentation"]["clusters"].size() == 2);
    CHECK(doc2["segmentation"]["outliers"].empty());
}

TEST_CASE("document numbers carry six significant digits", "[trackio]") {
    OmegaEstimate est;
    est.point_id = "p";
    est.mean_omega = 0.123456789123;
    est.median_omega = 98765.4321;
    est.std_omega = 0.0;
    est.n_valid = 1;
    OmegaSample s;
    s.t = 1.0 / 3.0;
    s.omega_sq = 0.015241578749999999;
    s.omega = 0.123456789123;
    s.valid = true;
    est.samples.push_back(s);
    const auto doc = nlohmann::json::parse(write_estimates({est}));
    CHECK(doc["points"][0]["mean_omega"].get<double>() == 0.123457);
    CHECK(doc["points"][0]["median_omega"].get<double>() == 98765.4);
    CHECK(doc["points"][0]["samples"][0]["t"].get<double>() == 0.333333);
    CHECK(doc["points"][0]["samples"][0]["omega_sq"].get<double>() == 0.0152416);
}
