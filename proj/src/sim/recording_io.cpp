#include "uavdet/sim/recording_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "uavdet/errors.hpp"
#include "uavdet/util/csv.hpp"

namespace uavdet::sim {

using nlohmann::json;

namespace {

std::string frame_name(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d.png", n);
    return buf;
}

json waypoints_to_json(const std::vector<Waypoint>& wps) {
    json arr = json::array();
    for (const auto& w : wps) arr.push_back({{"t", w.t}, {"x", w.x}, {"y", w.y}});
    return arr;
}

json clutter_to_json(const std::vector<ClutterSpec>& cs) {
    json arr = json::array();
    for (const auto& c : cs) {
        arr.push_back({{"x", c.x},
                       {"y", c.y},
                       {"width", c.width},
                       {"height", c.height},
                       {"texture_class", c.texture_class},
                       {"contrast", c.contrast},
                       {"reflectivity", c.reflectivity}});
    }
    return arr;
}

}  // namespace

void save_scene_config(const SceneConfig& cfg, const std::filesystem::path& path) {
    json j;
    j["width"] = cfg.width;
    j["height"] = cfg.height;
    j["focal_px"] = cfg.focal_px;
    j["pitch_deg"] = cfg.pitch_deg;
    j["altitude_m"] = cfg.altitude_m;
    j["bob_amplitude_m"] = cfg.bob_amplitude_m;
    j["bob_freq_hz"] = cfg.bob_freq_hz;
    j["motion"] = (cfg.motion == MotionMode::Fly) ? "fly" : "hover";
    j["forward_speed"] = cfg.forward_speed;
    j["duration_s"] = cfg.duration_s;
    j["frame_rate"] = cfg.frame_rate;
    j["altitude_rate"] = cfg.altitude_rate;
    j["person_waypoints"] = waypoints_to_json(cfg.person_waypoints);
    j["person_height_m"] = cfg.person_height_m;
    j["person_width_m"] = cfg.person_width_m;
    j["person_present"] = cfg.person_present;
    j["difficulty"] = to_string(cfg.difficulty);
    j["clutter"] = clutter_to_json(cfg.clutter);
    j["dvs_threshold"] = cfg.dvs_threshold;
    j["rgb_noise"] = cfg.rgb_noise;
    j["label_jitter"] = cfg.label_jitter;
    j["world_half_width"] = cfg.world_half_width;
    j["world_depth"] = cfg.world_depth;
    j["seed"] = cfg.seed;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    SceneConfig cfg;
    cfg.width = j.value("width", cfg.width);
    cfg.height = j.value("height", cfg.height);
    cfg.focal_px = j.value("focal_px", cfg.focal_px);
    cfg.pitch_deg = j.value("pitch_deg", cfg.pitch_deg);
    cfg.altitude_m = j.value("altitude_m", cfg.altitude_m);
    cfg.bob_amplitude_m = j.value("bob_amplitude_m", cfg.bob_amplitude_m);
    cfg.bob_freq_hz = j.value("bob_freq_hz", cfg.bob_freq_hz);
    cfg.motion = (j.value("motion", "hover") == "fly") ? MotionMode::Fly : MotionMode::Hover;
    cfg.forward_speed = j.value("forward_speed", cfg.forward_speed);
    cfg.duration_s = j.value("duration_s", cfg.duration_s);
    cfg.frame_rate = j.value("frame_rate", cfg.frame_rate);
    cfg.altitude_rate = j.value("altitude_rate", cfg.altitude_rate);
    if (j.contains("person_waypoints")) {
        for (const auto& w : j["person_waypoints"]) {
            cfg.person_waypoints.push_back({w.at("t"), w.at("x"), w.at("y")});
        }
    }
    cfg.person_height_m = j.value("person_height_m", cfg.person_height_m);
    cfg.person_width_m = j.value("person_width_m", cfg.person_width_m);
    cfg.person_present = j.value("person_present", cfg.person_present);
    cfg.difficulty = difficulty_from_string(j.value("difficulty", "easy"));
    if (j.contains("clutter")) {
        for (const auto& c : j["clutter"]) {
            cfg.clutter.push_back({c.at("x"), c.at("y"), c.at("width"), c.at("height"),
                                   c.at("texture_class"), c.at("contrast"), c.at("reflectivity")});
        }
    }
    cfg.dvs_threshold = j.value("dvs_threshold", cfg.dvs_threshold);
    cfg.rgb_noise = j.value("rgb_noise", cfg.rgb_noise);
    cfg.label_jitter = j.value("label_jitter", cfg.label_jitter);
    cfg.world_half_width = j.value("world_half_width", cfg.world_half_width);
    cfg.world_depth = j.value("world_depth", cfg.world_depth);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

void save_recording(const Recording& rec, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "rgb");

    for (int n = 0; n < rec.frame_count(); ++n) {
        write_png(dir / "rgb" / frame_name(n), rec.rgb[n]);
    }
    {
        CsvWriter w(dir / "events.csv", {"t_us", "x", "y", "polarity"});
        for (const auto& e : rec.events) {
            w.row({std::to_string(e.t_us), std::to_string(e.x), std::to_string(e.y),
                   std::to_string(static_cast<int>(e.polarity))});
        }
    }
    {
        CsvWriter w(dir / "radar.csv",
                    {"frame", "distance_m", "aoa_deg", "radial_velocity_mps", "reflectivity"});
        for (int n = 0; n < static_cast<int>(rec.radar_truths.size()); ++n) {
            for (const auto& t : rec.radar_truths[n]) {
                w.row({std::to_string(n), fmt_double(t.distance), fmt_double(t.aoa_deg),
                       fmt_double(t.radial_velocity), fmt_double(t.reflectivity)});
            }
        }
    }
    {
        CsvWriter w(dir / "altitude.csv", {"t_us", "h_m"});
        for (const auto& [t, hm] : rec.altitude) w.row({std::to_string(t), fmt_double(hm)});
    }
    {
        CsvWriter w(dir / "labels.csv", {"frame", "x1", "y1", "x2", "y2", "present"});
        for (int n = 0; n < static_cast<int>(rec.labels.size()); ++n) {
            const auto& l = rec.labels[n];
            w.row({std::to_string(n), fmt_double(l.x1), fmt_double(l.y1), fmt_double(l.x2),
                   fmt_double(l.y2), std::to_string(l.present)});
        }
    }
    save_scene_config(rec.config, dir / "meta.json");
}

Recording load_recording(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    Recording rec;
    rec.config = load_scene_config(dir / "meta.json");

    CsvTable labels = read_csv(dir / "labels.csv");
    const int lc_frame = labels.column("frame");
    const int lc_present = labels.column("present");
    const int lc_x1 = labels.column("x1"), lc_y1 = labels.column("y1");
    const int lc_x2 = labels.column("x2"), lc_y2 = labels.column("y2");
    rec.labels.resize(labels.rows.size());
    for (const auto& row : labels.rows) {
        const int n = std::stoi(row[lc_frame]);
        if (n < 0 || n >= static_cast<int>(rec.labels.size())) {
            throw ValidationError("labels.csv: frame index " + row[lc_frame] + " out of range");
        }
        rec.labels[n] = {std::stod(row[lc_x1]), std::stod(row[lc_y1]), std::stod(row[lc_x2]),
                         std::stod(row[lc_y2]), std::stoi(row[lc_present])};
    }

    rec.rgb.reserve(rec.labels.size());
    for (std::size_t n = 0; n < rec.labels.size(); ++n) {
        const fs::path p = dir / "rgb" / frame_name(static_cast<int>(n));
        if (!fs::exists(p)) throw ValidationError("missing frame " + p.string());
        rec.rgb.push_back(read_png(p));
    }

    CsvTable events = read_csv(dir / "events.csv");
    const int ec_t = events.column("t_us"), ec_x = events.column("x"), ec_y = events.column("y");
    const int ec_p = events.column("polarity");
    std::int64_t prev_t = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < events.rows.size(); ++i) {
        const auto& row = events.rows[i];
        DvsEvent e;
        e.t_us = std::stoll(row[ec_t]);
        e.x = std::stoi(row[ec_x]);
        e.y = std::stoi(row[ec_y]);
        e.polarity = static_cast<std::int8_t>(std::stoi(row[ec_p]));
        if (e.t_us < prev_t) {
            throw ValidationError("events.csv:" + std::to_string(i + 2) +
                                  ": timestamps must be non-decreasing");
        }
        prev_t = e.t_us;
        rec.events.push_back(e);
    }

    CsvTable radar = read_csv(dir / "radar.csv");
    const int rc_frame = radar.column("frame"), rc_d = radar.column("distance_m");
    const int rc_a = radar.column("aoa_deg"), rc_v = radar.column("radial_velocity_mps");
    const int rc_r = radar.column("reflectivity");
    rec.radar_truths.resize(rec.labels.size());
    for (const auto& row : radar.rows) {
        const int n = std::stoi(row[rc_frame]);
        if (n < 0 || n >= static_cast<int>(rec.radar_truths.size())) {
            throw ValidationError("radar.csv: frame index " + row[rc_frame] + " out of range");
        }
        rec.radar_truths[n].push_back({std::stod(row[rc_d]), std::stod(row[rc_a]),
                                       std::stod(row[rc_v]), std::stod(row[rc_r])});
    }

    CsvTable alt = read_csv(dir / "altitude.csv");
    const int ac_t = alt.column("t_us"), ac_h = alt.column("h_m");
    for (const auto& row : alt.rows) {
        rec.altitude.emplace_back(std::stoll(row[ac_t]), std::stod(row[ac_h]));
    }
    return rec;
}

}  // namespace uavdet::sim
