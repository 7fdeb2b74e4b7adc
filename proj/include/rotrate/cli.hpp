#pragma once

// Command-line front end: simulate / estimate / segment / sweep.
//
// Every subcommand echoes its fully-resolved configuration as a single JSON
// line on stderr; `--config <file>` replays such a line and reproduces the
// run byte for byte. Exit codes: 0 success, 2 input or configuration error,
// 3 when no point yields a single valid sample.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotrate/errors.hpp"
#include "rotrate/estimator.hpp"
#include "rotrate/numdiff.hpp"
#include "rotrate/scene.hpp"
#include "rotrate/segmentation.hpp"
#include "rotrate/trackio.hpp"

namespace rotrate::cli {

struct PointSpec {
    double radius = 1.0;
    double phase = 0.0;
    double height = 0.0;
    std::string label;
};

struct SceneConfig {
    double omega = 0.5;
    double center_offset = 0.0;
    std::vector<PointSpec> points;
};

struct CameraConfig {
    std::string kind = "orthographic";
    double focal_length = 1.0;
    double standoff = 10.0;
    double axis_depth = 0.0; // 0 resolves to standoff
};

struct PlanConfig {
    double t_start = 0.0;
    double dt = 0.0157;
    std::size_t n_samples = 400;
};

struct NoiseConfig {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

struct SimulateConfig {
    SceneConfig scene;
    CameraConfig camera;
    PlanConfig plan;
    NoiseConfig noise;
    std::string out;
};

struct EstimateConfig {
    std::string in;
    std::string fixture; // "table1" or empty
    std::string scheme = "central";
    double eps_rel = 0.05;
    std::string aggregation = "mean";
    std::string out;       // estimates document; stdout when empty
    std::string table_out; // per-sample CSV table, optional
};

struct SegmentConfig {
    std::string in;
    std::string fixture;
    std::string scheme = "central";
    double eps_rel = 0.05;
    std::string aggregation = "mean";
    double tol = 0.05;
    std::string out;
    std::string table_out;
};

struct SweepConfig {
    SceneConfig scene;
    PlanConfig plan{0.0, 0.001, 6284};
    std::vector<double> half_fov_deg{5.0, 10.0, 20.0, 30.0};
    std::string scheme = "central";
    double eps_rel = 0.05;
    std::string out; // CSV table; stdout when empty
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PointSpec, radius, phase, height, label)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SceneConfig, omega, center_offset, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CameraConfig, kind, focal_length, standoff, axis_depth)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PlanConfig, t_start, dt, n_samples)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(NoiseConfig, sigma, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SimulateConfig, scene, camera, plan, noise, out)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EstimateConfig, in, fixture, scheme, eps_rel, aggregation,
                                                out, table_out)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SegmentConfig, in, fixture, scheme, eps_rel, aggregation,
                                                tol, out, table_out)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SweepConfig, scene, plan, half_fov_deg, scheme, eps_rel, out)

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot open '" + path + "' for writing");
    }
    f << content;
    if (!f) {
        throw Error("failed while writing '" + path + "'");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline PointSpec parse_point_spec(const std::string& text) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (fields.size() < 2 || fields.size() > 4) {
        throw Error("point: expected 'R,theta0[,height[,label]]', got '" + text + "'");
    }
    const auto num = [&](const std::string& s, const char* what) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
            throw Error(std::string("point: ") + what + " '" + s + "' is not a finite number");
        }
        return v;
    };
    PointSpec p;
    p.radius = num(fields[0], "radius");
    p.phase = num(fields[1], "phase");
    if (fields.size() >= 3) {
        p.height = num(fields[2], "height");
    }
    if (fields.size() == 4) {
        p.label = fields[3];
    }
    return p;
}

inline DiffScheme parse_scheme(const std::string& name) {
    if (name == "backward") {
        return DiffScheme::backward;
    }
    if (name == "central") {
        return DiffScheme::central;
    }
    throw Error("scheme: expected 'backward' or 'central', got '" + name + "'");
}

inline Aggregation parse_aggregation(const std::string& name) {
    if (name == "mean") {
        return Aggregation::mean;
    }
    if (name == "median") {
        return Aggregation::median;
    }
    throw Error("aggregation: expected 'mean' or 'median', got '" + name + "'");
}

inline void resolve_scene(SceneConfig& scene) {
    if (scene.points.empty()) {
        scene.points.push_back({});
    }
    for (std::size_t i = 0; i < scene.points.size(); ++i) {
        if (scene.points[i].label.empty()) {
            scene.points[i].label = "p" + std::to_string(i);
        }
    }
}

inline void validate_scene(const SceneConfig& scene) {
    for (const auto& p : scene.points) {
        if (!(p.radius >= 0.0)) {
            throw Error("point.radius: must be >= 0");
        }
        if (!std::isfinite(p.radius) || !std::isfinite(p.phase) || !std::isfinite(p.height)) {
            throw Error("point: fields must be finite");
        }
    }
    if (!std::isfinite(scene.omega)) {
        throw Error("scene.omega: must be finite");
    }
    if (!std::isfinite(scene.center_offset)) {
        throw Error("scene.center_offset: must be finite");
    }
}

inline void validate_plan(const PlanConfig& plan) {
    if (!(plan.dt > 0.0)) {
        throw Error("plan.dt: must be > 0");
    }
    if (plan.n_samples < 3) {
        throw Error("plan.n_samples: must be >= 3 (got " + std::to_string(plan.n_samples) + ")");
    }
}

inline RigidScene build_scene(const SceneConfig& cfg, double depth_of_axis) {
    RigidScene scene;
    scene.motion = {cfg.omega, cfg.center_offset};
    scene.depth_of_axis = depth_of_axis;
    scene.points.reserve(cfg.points.size());
    for (const auto& p : cfg.points) {
        scene.points.emplace_back(p.radius, p.phase, p.height, p.label);
    }
    return scene;
}

/// Loads a `--config` JSON if given; such a run may not mix in other flags.
template <typename Cfg>
void apply_config_file(CLI::App* sub, const std::string& config_path, const char* name, Cfg& cfg) {
    if (config_path.empty()) {
        return;
    }
    for (const auto* opt : sub->get_options()) {
        if (opt->count() > 0 && opt->get_name() != "--config") {
            throw Error("--config cannot be combined with " + opt->get_name());
        }
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(config_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("config '" + config_path + "': " + e.what());
    }
    if (j.value("subcommand", "") != name) {
        throw Error("config '" + config_path + "' is not a '" + std::string(name) + "' configuration");
    }
    try {
        cfg = j.get<Cfg>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("config '" + config_path + "': " + e.what());
    }
}

template <typename Cfg>
void echo_config(const Cfg& cfg, const char* name, std::ostream& err) {
    nlohmann::json j = cfg;
    j["subcommand"] = name;
    err << j.dump() << "\n";
}

struct Pipeline {
    std::vector<DerivativeSeries> series;
    std::vector<OmegaEstimate> estimates;
    std::size_t total_valid = 0;
    std::size_t too_short = 0;
};

inline Pipeline run_pipeline(const std::vector<TrackedTrajectory>& trajectories, DiffScheme scheme,
                             const EstimatorConfig& ecfg) {
    Pipeline p;
    p.series.reserve(trajectories.size());
    for (const auto& traj : trajectories) {
        try {
            p.series.push_back(differentiate(traj, scheme));
        } catch (const TooFewSamples&) {
            p.series.push_back({traj.point_id, {}, scheme});
            ++p.too_short;
        }
    }
    p.estimates = estimate_trajectories(p.series, ecfg);
    for (const auto& est : p.estimates) {
        p.total_valid += est.n_valid;
    }
    return p;
}

inline std::string sample_table_csv(const Pipeline& p) {
    std::string csv = "point_id,t,y,yd,ydd,omega_sq,omega,valid,invalid_reason\n";
    const auto cell = [](const std::optional<double>& v) {
        return v ? rotrate::detail::format_double(*v) : std::string();
    };
    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const auto& series = p.series[i];
        const auto& est = p.estimates[i];
        for (std::size_t k = 0; k < series.rows.size(); ++k) {
            const auto& row = series.rows[k];
            const auto& sample = est.samples[k];
            csv += series.point_id;
            csv += ',';
            csv += rotrate::detail::format_double(row.t);
            csv += ',';
            csv += rotrate::detail::format_double(row.y);
            csv += ',';
            csv += cell(row.yd);
            csv += ',';
            csv += cell(row.ydd);
            csv += ',';
            csv += cell(sample.omega_sq);
            csv += ',';
            csv += cell(sample.omega);
            csv += ',';
            csv += sample.valid ? "true" : "false";
            csv += ',';
            csv += to_string(sample.reason);
            csv += '\n';
        }
    }
    return csv;
}

inline std::vector<TrackedTrajectory> load_tracks(const std::string& in, const std::string& fixture) {
    const bool have_in = !in.empty();
    const bool have_fixture = !fixture.empty();
    if (have_in == have_fixture) {
        throw Error("exactly one of --in and --fixture is required");
    }
    if (have_fixture) {
        if (fixture != "table1") {
            throw Error("fixture: unknown fixture '" + fixture + "'");
        }
        return table1_fixture();
    }
    return parse_tracks(read_file(in)).trajectories;
}

inline void validate_estimator_fields(const std::string& scheme, double eps_rel,
                                      const std::string& aggregation) {
    parse_scheme(scheme);
    parse_aggregation(aggregation);
    if (!(eps_rel >= 0.0 && eps_rel < 1.0)) {
        throw Error("eps_rel: must be in [0, 1)");
    }
}

inline int emit_or_exit3(const Pipeline& p, std::ostream& err) {
    if (p.total_valid > 0) {
        return 0;
    }
    if (p.too_short == p.series.size()) {
        err << "error: no valid samples: insufficient samples (every trajectory needs >= 3)\n";
    } else {
        err << "error: no valid samples across all points\n";
    }
    return 3;
}

inline int run_simulate(SimulateConfig cfg, std::ostream& err) {
    resolve_scene(cfg.scene);
    if (cfg.camera.kind != "orthographic" && cfg.camera.kind != "perspective") {
        throw Error("camera.kind: expected 'orthographic' or 'perspective', got '" + cfg.camera.kind + "'");
    }
    if (cfg.camera.axis_depth == 0.0) {
        cfg.camera.axis_depth = cfg.camera.standoff;
    }
    validate_scene(cfg.scene);
    validate_plan(cfg.plan);
    if (cfg.noise.sigma < 0.0) {
        throw Error("noise.sigma: must be >= 0");
    }
    if (cfg.out.empty()) {
        throw Error("out: an output path is required");
    }
    CameraModel cam;
    if (cfg.camera.kind == "perspective") {
        if (!(cfg.camera.focal_length > 0.0)) {
            throw Error("camera.focal_length: must be > 0");
        }
        if (!(cfg.camera.standoff > 0.0)) {
            throw Error("camera.standoff: must be > 0");
        }
        if (!(cfg.camera.axis_depth > 0.0)) {
            throw Error("camera.axis_depth: must be > 0");
        }
        cam = CameraModel::perspective(cfg.camera.focal_length, cfg.camera.standoff);
    }
    echo_config(cfg, "simulate", err);

    const RigidScene scene = build_scene(cfg.scene, cfg.camera.axis_depth);
    const SamplingPlan plan{cfg.plan.t_start, cfg.plan.dt, cfg.plan.n_samples};
    auto trajectories = simulate(scene, cam, plan);
    trajectories = add_noise(trajectories, cfg.noise.sigma, cfg.noise.seed);
    write_file(cfg.out, write_tracks(trajectories));

    nlohmann::json meta;
    meta["ground_truth"] = {{"omega", cfg.scene.omega}, {"center_offset", cfg.scene.center_offset}};
    nlohmann::json config_json = cfg;
    config_json["subcommand"] = "simulate";
    meta["config"] = config_json;
    write_file(cfg.out + ".meta.json", meta.dump(2) + "\n");

    err << "wrote " << trajectories.size() << " trajectories x " << cfg.plan.n_samples << " samples to "
        << cfg.out << "\n";
    return 0;
}

inline int run_estimate(const EstimateConfig& cfg, std::ostream& out, std::ostream& err) {
    validate_estimator_fields(cfg.scheme, cfg.eps_rel, cfg.aggregation);
    if (cfg.in.empty() == cfg.fixture.empty()) {
        throw Error("exactly one of --in and --fixture is required");
    }
    echo_config(cfg, "estimate", err);
    const auto trajectories = load_tracks(cfg.in, cfg.fixture);
    const EstimatorConfig ecfg{cfg.eps_rel, parse_aggregation(cfg.aggregation)};
    const Pipeline p = run_pipeline(trajectories, parse_scheme(cfg.scheme), ecfg);

    const std::string doc = write_estimates(p.estimates);
    if (cfg.out.empty()) {
        out << doc;
    } else {
        write_file(cfg.out, doc);
    }
    if (!cfg.table_out.empty()) {
        write_file(cfg.table_out, sample_table_csv(p));
    }
    return emit_or_exit3(p, err);
}

inline int run_segment(const SegmentConfig& cfg, std::ostream& out, std::ostream& err) {
    validate_estimator_fields(cfg.scheme, cfg.eps_rel, cfg.aggregation);
    if (!(cfg.tol > 0.0)) {
        throw Error("tol: must be > 0");
    }
    if (cfg.in.empty() == cfg.fixture.empty()) {
        throw Error("exactly one of --in and --fixture is required");
    }
    echo_config(cfg, "segment", err);
    const auto trajectories = load_tracks(cfg.in, cfg.fixture);
    if (trajectories.size() < 2) {
        throw Error("segment requires at least 2 tracked points");
    }
    const EstimatorConfig ecfg{cfg.eps_rel, parse_aggregation(cfg.aggregation)};
    const Pipeline p = run_pipeline(trajectories, parse_scheme(cfg.scheme), ecfg);
    const SegmentLabeling labeling = segment_points(p.estimates, cfg.tol);

    const std::string doc = write_estimates(p.estimates, &labeling);
    if (cfg.out.empty()) {
        out << doc;
    } else {
        write_file(cfg.out, doc);
    }
    if (!cfg.table_out.empty()) {
        write_file(cfg.table_out, sample_table_csv(p));
    }
    err << "clusters: " << labeling.cluster_omegas.size() << ", outliers: " << labeling.outliers.size()
        << "\n";
    return emit_or_exit3(p, err);
}

inline int run_sweep(SweepConfig cfg, std::ostream& out, std::ostream& err) {
    resolve_scene(cfg.scene);
    validate_scene(cfg.scene);
    validate_plan(cfg.plan);
    validate_estimator_fields(cfg.scheme, cfg.eps_rel, "mean");
    if (cfg.scene.omega == 0.0) {
        throw Error("scene.omega: must be nonzero (relative error is undefined at omega = 0)");
    }
    if (cfg.half_fov_deg.empty()) {
        throw Error("half_fov: at least one half-FOV angle is required");
    }
    for (double fov : cfg.half_fov_deg) {
        if (!(fov >= 0.0 && fov < 90.0)) {
            throw Error("half_fov: angles must lie in [0, 90) degrees");
        }
    }
    echo_config(cfg, "sweep", err);

    double ymax = 0.0;
    for (const auto& p : cfg.scene.points) {
        ymax = std::max(ymax, std::abs(cfg.scene.center_offset) + p.radius);
    }
    if (!(ymax > 0.0)) {
        throw Error("point.radius: the scene has no horizontal extent");
    }

    const DiffScheme scheme = parse_scheme(cfg.scheme);
    const EstimatorConfig ecfg{cfg.eps_rel, Aggregation::mean};
    const SamplingPlan plan{cfg.plan.t_start, cfg.plan.dt, cfg.plan.n_samples};
    const double omega_true = std::abs(cfg.scene.omega);

    std::string csv = "half_fov_deg,rel_error\n";
    for (double fov : cfg.half_fov_deg) {
        CameraModel cam;
        double axis_depth = 0.0;
        if (fov > 0.0) {
            const double standoff = ymax / std::tan(fov * std::numbers::pi / 180.0);
            cam = CameraModel::perspective(standoff, standoff); // image scale f/Z0 = 1
            axis_depth = standoff;
        }
        const RigidScene scene = build_scene(cfg.scene, axis_depth);
        const Pipeline p = run_pipeline(simulate(scene, cam, plan), scheme, ecfg);
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& est : p.estimates) {
            if (est.mean_omega) {
                sum += *est.mean_omega;
                ++count;
            }
        }
        if (count == 0) {
            err << "error: no valid samples at half-FOV " << fov << " deg\n";
            return 3;
        }
        const double rel_error = std::abs(sum / static_cast<double>(count) - omega_true) / omega_true;
        csv += rotrate::detail::format_double(fov);
        csv += ',';
        csv += rotrate::detail::format_double(rel_error);
        csv += '\n';
    }
    if (cfg.out.empty()) {
        out << csv;
    } else {
        write_file(cfg.out, csv);
    }
    return 0;
}

} // namespace detail

/// Entry point used by the binary and by tests; args exclude the program
/// name. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rotation-rate estimation from fixated horizontal feature tracks"};
    app.name("rotrate");
    app.require_subcommand(1);

    SimulateConfig sim_cfg;
    std::vector<std::string> sim_points;
    std::string sim_config_path;
    auto* sim = app.add_subcommand("simulate", "synthesize a track file from a rotating scene");
    sim->add_option("--omega", sim_cfg.scene.omega, "rotation rate, rad/s (signed)")->capture_default_str();
    sim->add_option("--center-offset", sim_cfg.scene.center_offset,
                    "horizontal offset of the rotation axis from the fixation point")
        ->capture_default_str();
    sim->add_option("--point", sim_points, "body point 'R,theta0[,height[,label]]' (repeatable)");
    sim->add_option("--camera", sim_cfg.camera.kind, "orthographic|perspective")->capture_default_str();
    sim->add_option("--focal", sim_cfg.camera.focal_length, "focal length (perspective)")
        ->capture_default_str();
    sim->add_option("--standoff", sim_cfg.camera.standoff, "camera-to-fixation distance (perspective)")
        ->capture_default_str();
    sim->add_option("--axis-depth", sim_cfg.camera.axis_depth,
                    "camera-to-axis distance (perspective; defaults to standoff)");
    sim->add_option("--t-start", sim_cfg.plan.t_start, "first sample time, s")->capture_default_str();
    sim->add_option("--dt", sim_cfg.plan.dt, "sample interval, s")->capture_default_str();
    sim->add_option("--n", sim_cfg.plan.n_samples, "number of samples (>= 3)")->capture_default_str();
    sim->add_option("--sigma", sim_cfg.noise.sigma, "Gaussian noise sigma on y")->capture_default_str();
    sim->add_option("--seed", sim_cfg.noise.seed, "noise seed")->capture_default_str();
    sim->add_option("--out", sim_cfg.out, "output track file (sidecar: <out>.meta.json)");
    sim->add_option("--config", sim_config_path, "run from an echoed JSON config");

    EstimateConfig est_cfg;
    std::string est_config_path;
    auto* est = app.add_subcommand("estimate", "recover omega per tracked point from a track file");
    est->add_option("--in", est_cfg.in, "input track file");
    est->add_option("--fixture", est_cfg.fixture, "built-in dataset (table1)");
    est->add_option("--scheme", est_cfg.scheme, "backward|central")->capture_default_str();
    est->add_option("--eps-rel", est_cfg.eps_rel, "near-singular band, fraction of max |y|")
        ->capture_default_str();
    est->add_option("--agg", est_cfg.aggregation, "mean|median")->capture_default_str();
    est->add_option("--out", est_cfg.out, "estimates document (stdout when omitted)");
    est->add_option("--table-out", est_cfg.table_out, "per-sample CSV table");
    est->add_option("--config", est_config_path, "run from an echoed JSON config");

    SegmentConfig seg_cfg;
    std::string seg_config_path;
    auto* seg = app.add_subcommand("segment", "cluster points by consistency of recovered omega");
    seg->add_option("--in", seg_cfg.in, "input track file");
    seg->add_option("--fixture", seg_cfg.fixture, "built-in dataset (table1)");
    seg->add_option("--scheme", seg_cfg.scheme, "backward|central")->capture_default_str();
    seg->add_option("--eps-rel", seg_cfg.eps_rel, "near-singular band, fraction of max |y|")
        ->capture_default_str();
    seg->add_option("--agg", seg_cfg.aggregation, "mean|median")->capture_default_str();
    seg->add_option("--tol", seg_cfg.tol, "cluster gap tolerance, rad/s")->capture_default_str();
    seg->add_option("--out", seg_cfg.out, "labeling document (stdout when omitted)");
    seg->add_option("--table-out", seg_cfg.table_out, "per-sample CSV table");
    seg->add_option("--config", seg_config_path, "run from an echoed JSON config");

    SweepConfig swp_cfg;
    std::vector<std::string> swp_points;
    std::string swp_config_path;
    auto* swp = app.add_subcommand("sweep", "perspective-error sweep over half-FOV angles");
    swp->add_option("--omega", swp_cfg.scene.omega, "true rotation rate, rad/s (nonzero)")
        ->capture_default_str();
    swp->add_option("--center-offset", swp_cfg.scene.center_offset,
                    "horizontal offset of the rotation axis from the fixation point")
        ->capture_default_str();
    swp->add_option("--point", swp_points, "body point 'R,theta0[,height[,label]]' (repeatable)");
    swp->add_option("--half-fov", swp_cfg.half_fov_deg,
                    "half-FOV angles in degrees; 0 selects the orthographic camera")
        ->delimiter(',')
        ->capture_default_str();
    swp->add_option("--t-start", swp_cfg.plan.t_start, "first sample time, s")->capture_default_str();
    swp->add_option("--dt", swp_cfg.plan.dt, "sample interval, s")->capture_default_str();
    swp->add_option("--n", swp_cfg.plan.n_samples, "number of samples (>= 3)")->capture_default_str();
    swp->add_option("--scheme", swp_cfg.scheme, "backward|central")->capture_default_str();
    swp->add_option("--eps-rel", swp_cfg.eps_rel, "near-singular band, fraction of max |y|")
        ->capture_default_str();
    swp->add_option("--out", swp_cfg.out, "output CSV (stdout when omitted)");
    swp->add_option("--config", swp_config_path, "run from an echoed JSON config");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            for (const auto& text : sim_points) {
                sim_cfg.scene.points.push_back(detail::parse_point_spec(text));
            }
            detail::apply_config_file(sim, sim_config_path, "simulate", sim_cfg);
            return detail::run_simulate(std::move(sim_cfg), err);
        }
        if (est->parsed()) {
            detail::apply_config_file(est, est_config_path, "estimate", est_cfg);
            return detail::run_estimate(est_cfg, out, err);
        }
        if (seg->parsed()) {
            detail::apply_config_file(seg, seg_config_path, "segment", seg_cfg);
            return detail::run_segment(seg_cfg, out, err);
        }
        if (swp->parsed()) {
            for (const auto& text : swp_points) {
                swp_cfg.scene.points.push_back(detail::parse_point_spec(text));
            }
            detail::apply_config_file(swp, swp_config_path, "sweep", swp_cfg);
            return detail::run_sweep(std::move(swp_cfg), out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace rotrate::cli
