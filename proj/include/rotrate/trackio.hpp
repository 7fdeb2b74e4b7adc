#pragma once

// Track-file parsing and writing, the embedded rotating-car reference
// dataset, and the JSON estimates document.
//
// Track file format: UTF-8, LF or CRLF, `#` comment lines, a `t,point_id,y`
// header, then one `t,point_id,y` record per line. Coordinates are already
// fixation-relative. An optional `# units: <name>` comment is carried as
// metadata only; the estimate is unit-free in length either way.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "rotrate/errors.hpp"
#include "rotrate/estimator.hpp"
#include "rotrate/segmentation.hpp"
#include "rotrate/trajectory.hpp"

namespace rotrate {

struct ParsedTracks {
    std::vector<TrackedTrajectory> trajectories; // sorted by point_id
    std::string units;                           // metadata only, may be empty
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_number(std::string_view field, int line, const std::string& what) {
    field = trim(field);
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty() || !std::isfinite(value)) {
        throw NonNumericField(line, what + " '" + std::string(field) + "' is not a finite number");
    }
    return value;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

/// Rounds to 6 significant digits, the precision of the estimates document.
inline double round_sig6(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return std::strtod(buf.data(), nullptr);
}

} // namespace detail

/// Parses a track file. Records are grouped by point_id and sorted by time;
/// a duplicate (point_id, t) pair is an error, as is a non-numeric field
/// (reported with its line number).
inline ParsedTracks parse_tracks(std::istream& in) {
    ParsedTracks out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    // point_id -> (t, y, line) triples in file order
    std::map<std::string, std::vector<std::tuple<double, double, int>>> groups;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::string_view view = detail::trim(line);
        if (view.empty()) {
            continue;
        }
        if (view.front() == '#') {
            std::string_view body = detail::trim(view.substr(1));
            constexpr std::string_view units_key = "units:";
            if (body.substr(0, units_key.size()) == units_key) {
                out.units = std::string(detail::trim(body.substr(units_key.size())));
            }
            continue;
        }
        if (!header_seen) {
            if (view != "t,point_id,y") {
                throw MalformedHeader("line " + std::to_string(line_no) +
                                      ": expected header 't,point_id,y', got '" + std::string(view) + "'");
            }
            header_seen = true;
            continue;
        }
        const auto first_comma = view.find(',');
        const auto last_comma = view.rfind(',');
        if (first_comma == std::string_view::npos || last_comma == first_comma) {
            throw NonNumericField(line_no, "expected 3 comma-separated fields");
        }
        const double t = detail::parse_number(view.substr(0, first_comma), line_no, "t");
        const std::string point_id{detail::trim(view.substr(first_comma + 1, last_comma - first_comma - 1))};
        if (point_id.empty() || point_id.find(',') != std::string::npos) {
            throw NonNumericField(line_no, "invalid point_id");
        }
        const double y = detail::parse_number(view.substr(last_comma + 1), line_no, "y");
        groups[point_id].emplace_back(t, y, line_no);
    }

    if (!header_seen || groups.empty()) {
        throw EmptyFile("track file contains no records");
    }
    for (auto& [point_id, records] : groups) {
        std::stable_sort(records.begin(), records.end(),
                         [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
        TrackedTrajectory traj;
        traj.point_id = point_id;
        traj.samples.reserve(records.size());
        for (std::size_t k = 0; k < records.size(); ++k) {
            if (k > 0 && std::get<0>(records[k]) == std::get<0>(records[k - 1])) {
                throw DuplicateTimestamp("point '" + point_id + "' has duplicate timestamp " +
                                         detail::format_double(std::get<0>(records[k])) + " (line " +
                                         std::to_string(std::get<2>(records[k])) + ")");
            }
            traj.samples.push_back({std::get<0>(records[k]), std::get<1>(records[k])});
        }
        out.trajectories.push_back(std::move(traj));
    }
    return out;
}

inline ParsedTracks parse_tracks(const std::string& text) {
    std::istringstream in(text);
    return parse_tracks(in);
}

/// Writes trajectories as a track file, sorted by point_id then t, at full
/// round-trip precision.
inline std::string write_tracks(const std::vector<TrackedTrajectory>& trajectories,
                                const std::string& units = "") {
    std::vector<const TrackedTrajectory*> order;
    order.reserve(trajectories.size());
    for (const auto& traj : trajectories) {
        if (traj.point_id.empty() || traj.point_id.find(',') != std::string::npos ||
            traj.point_id.find('\n') != std::string::npos || traj.point_id.find('\r') != std::string::npos) {
            throw std::invalid_argument("point_id '" + traj.point_id + "' cannot be written to a track file");
        }
        order.push_back(&traj);
    }
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return a->point_id < b->point_id; });

    std::string out;
    if (!units.empty()) {
        out += "# units: " + units + "\n";
    }
    out += "t,point_id,y\n";
    for (const auto* traj : order) {
        for (const auto& s : traj->samples) {
            out += detail::format_double(s.t);
            out += ',';
            out += traj->point_id;
            out += ',';
            out += detail::format_double(s.y);
            out += '\n';
        }
    }
    return out;
}

/// The rotating-car reference dataset: two features tracked every 16 frames
/// of a 30 fps video, horizontal coordinates in inches relative to the
/// rotation axis. Feature 1 ends one frame earlier than feature 2 because
/// its last measurement is missing in the source data.
inline std::vector<TrackedTrajectory> table1_fixture() {
    constexpr double dt = 16.0 / 30.0;
    const std::array<double, 10> f1 = {-3.26, -3.26, -3.27, -3.14, -3.00,
                                       -2.80, -2.51, -2.17, -1.98, -1.69};
    const std::array<double, 11> f2 = {3.31, 3.31, 3.10, 2.79, 2.28, 1.66,
                                       0.98, 0.24, -0.67, -1.42, -1.93};
    std::vector<TrackedTrajectory> out(2);
    out[0].point_id = "feature1";
    for (std::size_t k = 0; k < f1.size(); ++k) {
        out[0].samples.push_back({static_cast<double>(k) * dt, f1[k]});
    }
    out[1].point_id = "feature2";
    for (std::size_t k = 0; k < f2.size(); ++k) {
        out[1].samples.push_back({static_cast<double>(k) * dt, f2[k]});
    }
    return out;
}

namespace detail {

inline nlohmann::json json_number(std::optional<double> v) {
    if (!v) {
        return nullptr;
    }
    return round_sig6(*v);
}

} // namespace detail

/// Estimates (and an optional labeling) as a JSON document. Numbers carry 6
/// significant digits; omega is reported as a magnitude with an explicit
/// direction-unknown marker, since the sign of the rotation is not
/// recoverable from horizontal motion alone.
inline nlohmann::json estimates_to_json(const std::vector<OmegaEstimate>& estimates,
                                        const SegmentLabeling* labeling = nullptr) {
    nlohmann::json doc;
    doc["schema"] = "rotrate.estimates/1";
    doc["points"] = nlohmann::json::array();
    for (const auto& est : estimates) {
        nlohmann::json p;
        p["point_id"] = est.point_id;
        p["aggregation"] = to_string(est.aggregation);
        p["omega"] = detail::json_number(est.value());
        p["direction"] = "unknown";
        p["mean_omega"] = detail::json_number(est.mean_omega);
        p["median_omega"] = detail::json_number(est.median_omega);
        p["std_omega"] = detail::json_number(est.std_omega);
        p["n_valid"] = est.n_valid;
        if (est.center_offset) {
            p["center_offset"] = detail::round_sig6(*est.center_offset);
        }
        p["samples"] = nlohmann::json::array();
        for (const auto& s : est.samples) {
            nlohmann::json row;
            row["t"] = detail::round_sig6(s.t);
            row["omega_sq"] = detail::json_number(s.omega_sq);
            row["omega"] = detail::json_number(s.omega);
            row["valid"] = s.valid;
            row["invalid_reason"] = to_string(s.reason);
            p["samples"].push_back(std::move(row));
        }
        doc["points"].push_back(std::move(p));
    }
    if (labeling != nullptr) {
        nlohmann::json seg;
        seg["clusters"] = nlohmann::json::array();
        // invert assignments to list members per cluster, ordered by id
        std::map<int, std::vector<std::string>> members;
        for (const auto& [point_id, cluster_id] : labeling->assignments) {
            members[cluster_id].push_back(point_id);
        }
        for (const auto& [cluster_id, summary] : labeling->cluster_omegas) {
            nlohmann::json c;
            c["cluster_id"] = cluster_id;
            c["consensus_omega"] = detail::round_sig6(summary.consensus_omega);
            c["member_count"] = summary.member_count;
            c["members"] = members[cluster_id];
            seg["clusters"].push_back(std::move(c));
        }
        seg["outliers"] = labeling->outliers;
        doc["segmentation"] = std::move(seg);
    }
    return doc;
}

/// Schema check for the estimates document; throws Error naming the first
/// violation. Accepts documents both with and without a segmentation block.
inline void validate_estimates_document(const nlohmann::json& doc) {
    const auto require = [](bool ok, const std::string& what) {
        if (!ok) {
            throw Error("estimates document: " + what);
        }
    };
    const auto number_or_null = [](const nlohmann::json& v) { return v.is_number() || v.is_null(); };

    require(doc.is_object(), "not an object");
    require(doc.value("schema", "") == "rotrate.estimates/1", "bad or missing schema tag");
    require(doc.contains("points") && doc["points"].is_array(), "missing points array");
    for (const auto& p : doc["points"]) {
        require(p.contains("point_id") && p["point_id"].is_string(), "point_id missing");
        const std::string id = p["point_id"];
        require(p.contains("n_valid") && p["n_valid"].is_number_unsigned(), id + ": n_valid missing");
        require(p.value("direction", "") == "unknown", id + ": direction marker missing");
        const std::string agg = p.value("aggregation", "");
        require(agg == "mean" || agg == "median", id + ": bad aggregation");
        for (const char* key : {"omega", "mean_omega", "median_omega", "std_omega"}) {
            require(p.contains(key) && number_or_null(p[key]), id + ": bad " + std::string(key));
        }
        require(p.contains("samples") && p["samples"].is_array(), id + ": samples missing");
        for (const auto& s : p["samples"]) {
            require(s.contains("t") && s["t"].is_number(), id + ": sample t missing");
            require(s.contains("omega_sq") && number_or_null(s["omega_sq"]), id + ": sample omega_sq bad");
            require(s.contains("omega") && number_or_null(s["omega"]), id + ": sample omega bad");
            require(s.contains("valid") && s["valid"].is_boolean(), id + ": sample valid bad");
            const std::string reason = s.value("invalid_reason", "");
            require(reason == "none" || reason == "negative_omega_sq" || reason == "near_singular" ||
                        reason == "missing_derivative",
                    id + ": bad invalid_reason");
            require(s["valid"].get<bool>() == (reason == "none" && !s["omega"].is_null()),
                    id + ": valid flag inconsistent");
        }
    }
    if (doc.contains("segmentation")) {
        const auto& seg = doc["segmentation"];
        require(seg.contains("clusters") && seg["clusters"].is_array(), "bad clusters");
        require(seg.contains("outliers") && seg["outliers"].is_array(), "bad outliers");
        for (const auto& c : seg["clusters"]) {
            require(c.contains("cluster_id") && c["cluster_id"].is_number_integer(), "bad cluster_id");
            require(c.contains("consensus_omega") && c["consensus_omega"].is_number(), "bad consensus_omega");
            require(c.contains("member_count") && c["member_count"].is_number_unsigned(), "bad member_count");
            require(c.contains("members") && c["members"].is_array(), "bad members");
        }
    }
}

/// Serializes estimates to the document format (pretty-printed JSON) after a
/// round-trip through the schema check.
inline std::string write_estimates(const std::vector<OmegaEstimate>& estimates,
                                   const SegmentLabeling* labeling = nullptr) {
    const nlohmann::json doc = estimates_to_json(estimates, labeling);
    validate_estimates_document(doc);
    return doc.dump(2) + "\n";
}

} // namespace rotrate
