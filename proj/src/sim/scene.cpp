#include "uavdet/sim/scene.hpp"

#include <algorithm>
#include <cmath>

#include "uavdet/errors.hpp"
#include "uavdet/radar/config.hpp"
#include "uavdet/util/rng.hpp"

namespace uavdet::sim {

std::string to_string(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        default: return "challenging";
    }
}

Difficulty difficulty_from_string(const std::string& s) {
    if (s == "easy") return Difficulty::Easy;
    if (s == "medium") return Difficulty::Medium;
    if (s == "challenging") return Difficulty::Challenging;
    throw ValidationError("unknown difficulty tag '" + s + "'");
}

void SceneConfig::validate() const {
    if (width < 8 || height < 8) throw ConfigError("image size too small");
    if (!(frame_rate > 0)) throw ConfigError("frame rate must be positive");
    if (!(duration_s > 0)) throw ConfigError("duration must be positive");
    if (!(focal_px > 0)) throw ConfigError("focal length must be positive");
    if (!(person_height_m > 0) || !(person_width_m > 0)) {
        throw ConfigError("person size must be positive");
    }
    if (altitude_m - bob_amplitude_m <= 0) throw ConfigError("altitude must stay positive");
    if (!(dvs_threshold > 0)) throw ConfigError("DVS threshold must be positive");
}

CameraPose camera_pose_at(const SceneConfig& cfg, double t) {
    CameraPose cam;
    cam.x = cfg.bob_amplitude_m * std::sin(2.0 * M_PI * cfg.bob_freq_hz * t);
    cam.y = (cfg.motion == MotionMode::Fly) ? cfg.forward_speed * t : 0.0;
    cam.h = cfg.altitude_m + cfg.bob_amplitude_m * std::cos(2.0 * M_PI * cfg.bob_freq_hz * 0.7 * t);
    cam.pitch_rad = cfg.pitch_deg * M_PI / 180.0;
    cam.focal_px = cfg.focal_px;
    cam.width = cfg.width;
    cam.height = cfg.height;
    return cam;
}

bool project_point(const CameraPose& cam, double wx, double wy, double wz, double* u, double* v) {
    const double dx = wx - cam.x, dy = wy - cam.y, dz = wz - cam.h;
    const double sp = std::sin(cam.pitch_rad), cp = std::cos(cam.pitch_rad);
    const double xc = dx;
    const double yc = -sp * dy - cp * dz;  // image down
    const double zc = cp * dy - sp * dz;   // optical axis
    if (zc < 0.05) return false;
    *u = (cam.width - 1) / 2.0 + cam.focal_px * xc / zc;
    *v = (cam.height - 1) / 2.0 + cam.focal_px * yc / zc;
    return true;
}

namespace {

struct DifficultyParams {
    int n_clutter;
    double bg_contrast;
    double clutter_contrast;
    double person_contrast;
};

DifficultyParams params_for(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return {2, 0.06, 0.30, 0.50};
        case Difficulty::Medium: return {5, 0.12, 0.45, 0.32};
        default: return {9, 0.22, 0.60, 0.16};
    }
}

double hash01(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return static_cast<double>(splitmix64(a ^ splitmix64(b ^ splitmix64(c))) >> 11) * 0x1.0p-53;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

/// Smooth lattice value noise in [0,1].
double vnoise(double u, double v, std::uint64_t seed) {
    const double fu = std::floor(u), fv = std::floor(v);
    const auto iu = static_cast<std::int64_t>(fu), iv = static_cast<std::int64_t>(fv);
    const double tu = smoothstep(u - fu), tv = smoothstep(v - fv);
    const double a = hash01(seed, iu, iv), b = hash01(seed, iu + 1, iv);
    const double c = hash01(seed, iu, iv + 1), d = hash01(seed, iu + 1, iv + 1);
    return (a * (1 - tu) + b * tu) * (1 - tv) + (c * (1 - tu) + d * tu) * tv;
}

double texture2(double u, double v, std::uint64_t seed) {
    return 0.7 * vnoise(u, v, seed) + 0.3 * vnoise(u * 3.7, v * 3.7, seed ^ 0x5bd1u);
}

struct Rgb {
    double r = 0, g = 0, b = 0;
};

struct WorldDir {
    double x, y, z;
};

WorldDir pixel_ray(const CameraPose& cam, double u, double v) {
    const double dx = (u - (cam.width - 1) / 2.0) / cam.focal_px;
    const double dy = (v - (cam.height - 1) / 2.0) / cam.focal_px;
    const double sp = std::sin(cam.pitch_rad), cp = std::cos(cam.pitch_rad);
    // R^T * (dx, dy, 1)
    return {dx, -sp * dy + cp, -cp * dy - sp};
}

struct PersonState {
    double x = 0, y = 0;    // ground position
    double vx = 0, vy = 0;  // walking velocity
};

PersonState person_at(const std::vector<Waypoint>& wps, double t) {
    PersonState s;
    if (wps.empty()) return s;
    if (t <= wps.front().t) {
        s.x = wps.front().x;
        s.y = wps.front().y;
        return s;
    }
    for (std::size_t i = 0; i + 1 < wps.size(); ++i) {
        if (t <= wps[i + 1].t) {
            const double dt = wps[i + 1].t - wps[i].t;
            const double f = dt > 0 ? (t - wps[i].t) / dt : 0.0;
            s.x = wps[i].x + f * (wps[i + 1].x - wps[i].x);
            s.y = wps[i].y + f * (wps[i + 1].y - wps[i].y);
            if (dt > 0) {
                s.vx = (wps[i + 1].x - wps[i].x) / dt;
                s.vy = (wps[i + 1].y - wps[i].y) / dt;
            }
            return s;
        }
    }
    s.x = wps.back().x;
    s.y = wps.back().y;
    return s;
}

std::vector<Waypoint> default_trajectory(const SceneConfig& cfg, Rng& rng) {
    // A lateral crossing that starts outside the field of view, so a share
    // of frames has no person, plus arbitrary turns afterwards.
    const double fov_half = std::atan((cfg.width / 2.0) / cfg.focal_px);
    std::vector<Waypoint> wps;
    double y = (cfg.motion == MotionMode::Fly) ? uniform(rng, 7.5, 9.5) : uniform(rng, 3.5, 6.0);
    const double dir = (uniform01(rng) < 0.5) ? 1.0 : -1.0;
    const double speed = uniform(rng, 0.9, 1.4);
    double x = dir * (std::tan(fov_half) * y + uniform(rng, 1.0, 1.8));
    double t = 0.0;
    wps.push_back({t, x, y});
    double heading = -dir;  // walk toward the other side
    while (t < cfg.duration_s + 0.5) {
        const double seg = uniform(rng, 1.6, 3.2);  // seconds per leg
        const double drift_y = uniform(rng, -0.5, 0.5);
        double nx = x + heading * speed * seg;
        double ny = std::clamp(y + drift_y, 2.5, cfg.world_depth - 2.0);
        const double x_lim = cfg.world_half_width - 0.5;
        if (nx > x_lim || nx < -x_lim) {
            nx = std::clamp(nx, -x_lim, x_lim);
            heading = -heading;
        } else if (uniform01(rng) < 0.25) {
            heading = -heading;  // occasional turn-around
        }
        t += seg;
        wps.push_back({t, nx, ny});
        x = nx;
        y = ny;
    }
    return wps;
}

std::vector<ClutterSpec> default_clutter(const SceneConfig& cfg, const DifficultyParams& dp, Rng& rng) {
    std::vector<ClutterSpec> out;
    for (int i = 0; i < dp.n_clutter; ++i) {
        ClutterSpec c;
        c.x = uniform(rng, -0.75 * cfg.world_half_width, 0.75 * cfg.world_half_width);
        c.y = uniform(rng, 3.0, std::min(8.8, cfg.world_depth - 1.0));
        c.width = uniform(rng, 0.6, 1.8);
        c.height = uniform(rng, 0.8, 2.2);
        c.texture_class = static_cast<int>(uniform_index(rng, 3));
        c.contrast = dp.clutter_contrast * uniform(rng, 0.7, 1.2);
        c.reflectivity = uniform(rng, 0.4, 1.6);
        out.push_back(c);
    }
    return out;
}

struct Billboard {
    double x, y, half_w, height;  // plane y = const, x in [x-hw, x+hw], z in [0, height]
    bool is_person = false;
    int texture_class = 2;
    double contrast = 0.3;
    Rgb color_a, color_b;
};

double billboard_tex(const Billboard& bb, double wx, double wz, std::uint64_t seed) {
    const double u = (wx - bb.x) / (2 * bb.half_w) + 0.5;
    const double v = wz / bb.height;
    switch (bb.texture_class) {
        case 0: return (std::fmod(u * 6.0, 1.0) < 0.5) ? 0.0 : 1.0;                 // stripes
        case 1: return (static_cast<int>(std::floor(u * 5)) + static_cast<int>(std::floor(v * 5))) % 2;  // checker
        default: return vnoise(u * 4.0, v * 4.0, seed);
    }
}

}  // namespace

Recording render_scene(const SceneConfig& cfg) {
    cfg.validate();
    const DifficultyParams dp = params_for(cfg.difficulty);

    Rng traj_rng(derive_seed(cfg.seed, 1));
    Rng clutter_rng(derive_seed(cfg.seed, 2));
    Rng color_rng(derive_seed(cfg.seed, 3));
    Rng jitter_rng(derive_seed(cfg.seed, 4));

    std::vector<Waypoint> wps;
    if (cfg.person_present) {
        wps = cfg.person_waypoints.empty() ? default_trajectory(cfg, traj_rng) : cfg.person_waypoints;
        for (const auto& w : wps) {
            if (std::abs(w.x) > cfg.world_half_width || w.y < 0.3 || w.y > cfg.world_depth) {
                throw GenerationError("person trajectory leaves world bounds at t = " +
                                      std::to_string(w.t) + " s");
            }
        }
    }
    std::vector<ClutterSpec> clutter =
        cfg.clutter.empty() ? default_clutter(cfg, dp, clutter_rng) : cfg.clutter;

    // Scene palette. In challenging scenes the person luminance approaches
    // the background mean, which is what makes the RGB channel weak there.
    const double bg_lum = 0.42;
    const double person_sign = (uniform01(color_rng) < 0.5) ? 1.0 : -1.0;
    const double person_lum = std::clamp(bg_lum + person_sign * dp.person_contrast, 0.05, 0.95);
    Rgb person_color{person_lum * uniform(color_rng, 0.8, 1.2), person_lum * uniform(color_rng, 0.8, 1.2),
                     person_lum * uniform(color_rng, 0.8, 1.2)};
    std::vector<std::pair<Rgb, Rgb>> clutter_colors;
    for (std::size_t i = 0; i < clutter.size(); ++i) {
        const double la = std::clamp(bg_lum + uniform(color_rng, -0.3, 0.3), 0.08, 0.95);
        const double lb = std::clamp(la - person_sign * clutter[i].contrast, 0.05, 0.95);
        clutter_colors.push_back({{la * uniform(color_rng, 0.85, 1.15), la * uniform(color_rng, 0.85, 1.15),
                                   la * uniform(color_rng, 0.85, 1.15)},
                                  {lb * uniform(color_rng, 0.85, 1.15), lb * uniform(color_rng, 0.85, 1.15),
                                   lb * uniform(color_rng, 0.85, 1.15)}});
    }

    const int n_frames = static_cast<int>(std::floor(cfg.duration_s * cfg.frame_rate));
    const int w = cfg.width, h = cfg.height;
    const double fov_half_deg = std::atan((w / 2.0) / cfg.focal_px) * 180.0 / M_PI;
    const double radar_fov_deg = fov_half_deg + 6.0;  // radar FOV matched to the camera mount

    Recording rec;
    rec.config = cfg;
    rec.rgb.reserve(n_frames);
    rec.labels.reserve(n_frames);
    rec.radar_truths.reserve(n_frames);

    IntensityVideo lum_video;
    lum_video.width = w;
    lum_video.height = h;

    const auto& radar_defaults = radar::default_profile();
    const double d_cap = radar_defaults.d_max() * 0.97;
    const double v_cap = radar_defaults.v_max() * 0.97;

    for (int n = 0; n < n_frames; ++n) {
        const double t = n / cfg.frame_rate;
        const CameraPose cam = camera_pose_at(cfg, t);
        const PersonState person = person_at(wps, t);

        // Billboards sorted far to near so nearer surfaces overwrite.
        std::vector<Billboard> boards;
        for (std::size_t i = 0; i < clutter.size(); ++i) {
            Billboard bb{clutter[i].x, clutter[i].y, clutter[i].width / 2, clutter[i].height,
                         false,        clutter[i].texture_class, clutter[i].contrast,
                         clutter_colors[i].first, clutter_colors[i].second};
            boards.push_back(bb);
        }
        if (cfg.person_present) {
            Billboard bb{person.x, person.y, cfg.person_width_m / 2, cfg.person_height_m,
                         true,     2,        0.12,                   person_color, person_color};
            boards.push_back(bb);
        }
        std::sort(boards.begin(), boards.end(),
                  [&](const Billboard& a, const Billboard& b) { return (a.y - cam.y) > (b.y - cam.y); });

        std::vector<double> lum(static_cast<std::size_t>(w) * h);
        ImageU8 img;
        img.width = w;
        img.height = h;
        img.pixels.resize(static_cast<std::size_t>(w) * h * 3);

        std::vector<Rgb> fb(static_cast<std::size_t>(w) * h);
        // Background: ground plane and far wall, textured in world coordinates
        // so drone motion produces consistent optical flow.
        for (int py = 0; py < h; ++py) {
            for (int px = 0; px < w; ++px) {
                const WorldDir d = pixel_ray(cam, px, py);
                Rgb c{0.5, 0.55, 0.6};  // sky fallback
                bool hit = false;
                if (d.z < -1e-6) {
                    const double tt = -cam.h / d.z;
                    const double gx = cam.x + tt * d.x, gy = cam.y + tt * d.y;
                    if (gy <= cfg.world_depth + 1e-6 || d.y <= 1e-9) {
                        const double n0 = texture2(gx * 0.8, gy * 0.8, cfg.seed ^ 0xAA);
                        const double l = std::clamp(bg_lum * 0.85 + dp.bg_contrast * (n0 - 0.5), 0.03, 1.0);
                        c = {l * 0.98, l * 0.95, l * 0.92};
                        hit = true;
                    }
                }
                if (!hit && d.y > 1e-9) {
                    const double tt = (cfg.world_depth - cam.y) / d.y;
                    const double wx = cam.x + tt * d.x, wz = cam.h + tt * d.z;
                    if (tt > 0) {
                        const double n0 = texture2(wx * 0.9, wz * 0.9, cfg.seed ^ 0xBB);
                        const double l = std::clamp(bg_lum + dp.bg_contrast * (n0 - 0.5), 0.03, 1.0);
                        c = {l, l, l * 1.05};
                        hit = true;
                    }
                }
                fb[static_cast<std::size_t>(py) * w + px] = c;
            }
        }

        // Billboards, far to near.
        prep::FrameLabel label;
        for (const auto& bb : boards) {
            // Screen bounding box from the four corners.
            double u0 = 1e9, u1 = -1e9, v0 = 1e9, v1 = -1e9;
            bool ok = true;
            for (int cidx = 0; cidx < 4; ++cidx) {
                const double cx = bb.x + ((cidx & 1) ? bb.half_w : -bb.half_w);
                const double cz = (cidx & 2) ? bb.height : 0.0;
                double uu, vv;
                if (!project_point(cam, cx, bb.y, cz, &uu, &vv)) {
                    ok = false;
                    break;
                }
                u0 = std::min(u0, uu);
                u1 = std::max(u1, uu);
                v0 = std::min(v0, vv);
                v1 = std::max(v1, vv);
            }
            if (!ok) continue;

            const int ix0 = std::max(0, static_cast<int>(std::floor(u0)) - 1);
            const int ix1 = std::min(w - 1, static_cast<int>(std::ceil(u1)) + 1);
            const int iy0 = std::max(0, static_cast<int>(std::floor(v0)) - 1);
            const int iy1 = std::min(h - 1, static_cast<int>(std::ceil(v1)) + 1);
            for (int py = iy0; py <= iy1; ++py) {
                for (int px = ix0; px <= ix1; ++px) {
                    const WorldDir d = pixel_ray(cam, px, py);
                    if (std::abs(d.y) < 1e-9) continue;
                    const double tt = (bb.y - cam.y) / d.y;
                    if (tt <= 0.05) continue;
                    const double wx = cam.x + tt * d.x, wz = cam.h + tt * d.z;
                    if (wx < bb.x - bb.half_w || wx > bb.x + bb.half_w || wz < 0 || wz > bb.height) continue;
                    if (bb.is_person && wz > bb.height * 0.82) {
                        // Head: narrower ellipse above the torso.
                        const double rx = (wx - bb.x) / (bb.half_w * 0.45);
                        const double rz = (wz - bb.height * 0.91) / (bb.height * 0.09);
                        if (rx * rx + rz * rz > 1.0) continue;
                    }
                    const double tex = billboard_tex(bb, wx, wz, cfg.seed ^ 0xCC);
                    Rgb base = bb.is_person ? bb.color_a
                                            : Rgb{bb.color_a.r * tex + bb.color_b.r * (1 - tex),
                                                  bb.color_a.g * tex + bb.color_b.g * (1 - tex),
                                                  bb.color_a.b * tex + bb.color_b.b * (1 - tex)};
                    if (bb.is_person) {
                        const double m = 1.0 + bb.contrast * (tex - 0.5);
                        base = {std::clamp(base.r * m, 0.0, 1.0), std::clamp(base.g * m, 0.0, 1.0),
                                std::clamp(base.b * m, 0.0, 1.0)};
                    }
                    fb[static_cast<std::size_t>(py) * w + px] = base;
                }
            }

            if (bb.is_person) {
                const double cu0 = std::clamp(u0, 0.0, static_cast<double>(w));
                const double cu1 = std::clamp(u1 + 1.0, 0.0, static_cast<double>(w));
                const double cv0 = std::clamp(v0, 0.0, static_cast<double>(h));
                const double cv1 = std::clamp(v1 + 1.0, 0.0, static_cast<double>(h));
                if (cu1 - cu0 >= 0.5 && cv1 - cv0 >= 0.5) {
                    label.present = 1;
                    label.x1 = cu0 / w;
                    label.y1 = cv0 / h;
                    label.x2 = cu1 / w;
                    label.y2 = cv1 / h;
                }
            }
        }

        if (label.present && cfg.label_jitter > 0) {
            const double bw = label.x2 - label.x1, bh = label.y2 - label.y1;
            label.x1 = std::clamp(label.x1 + uniform(jitter_rng, -1.0, 1.0) * cfg.label_jitter * bw, 0.0, 1.0);
            label.x2 = std::clamp(label.x2 + uniform(jitter_rng, -1.0, 1.0) * cfg.label_jitter * bw, 0.0, 1.0);
            label.y1 = std::clamp(label.y1 + uniform(jitter_rng, -1.0, 1.0) * cfg.label_jitter * bh, 0.0, 1.0);
            label.y2 = std::clamp(label.y2 + uniform(jitter_rng, -1.0, 1.0) * cfg.label_jitter * bh, 0.0, 1.0);
            if (label.x1 > label.x2) std::swap(label.x1, label.x2);
            if (label.y1 > label.y2) std::swap(label.y1, label.y2);
        }
        rec.labels.push_back(label);

        // Quantize to 8-bit RGB with mild deterministic sensor noise; the
        // event stream derives from the clean luminance.
        for (std::size_t p = 0; p < fb.size(); ++p) {
            lum[p] = std::clamp((fb[p].r + fb[p].g + fb[p].b) / 3.0, 0.02, 1.0);
            const double chans[3] = {fb[p].r, fb[p].g, fb[p].b};
            for (int cch = 0; cch < 3; ++cch) {
                const double noise =
                    cfg.rgb_noise * 2.0 * (hash01(cfg.seed ^ 0xDD, n * 3 + cch, p) - 0.5);
                img.pixels[p * 3 + cch] = static_cast<std::uint8_t>(
                    std::clamp(std::lround((chans[cch] + noise) * 255.0), 0L, 255L));
            }
        }
        rec.rgb.push_back(std::move(img));
        lum_video.frames.push_back(std::move(lum));
        lum_video.t_us.push_back(rec.frame_time_us(n));

        // Radar truths: the walking person plus static clutter, both with
        // radial velocities relative to the moving drone.
        std::vector<radar::TargetTruth> truths;
        const double eps = 1e-4;
        const CameraPose cam2 = camera_pose_at(cfg, t + eps);
        const double drone_vx = (cam2.x - cam.x) / eps;
        const double drone_vy = (cam2.y - cam.y) / eps;
        auto add_target = [&](double gx, double gy, double vx, double vy, double refl) {
            const double rx = gx - cam.x, ry = gy - cam.y;
            const double dist = std::hypot(rx, ry);
            if (dist < 0.3 || dist > d_cap) return;
            const double aoa = std::atan2(rx, ry) * 180.0 / M_PI;
            if (std::abs(aoa) > radar_fov_deg) return;
            const double vr = (rx * (vx - drone_vx) + ry * (vy - drone_vy)) / dist;
            if (std::abs(vr) > v_cap) return;
            truths.push_back({dist, aoa, vr, refl});
        };
        if (cfg.person_present) add_target(person.x, person.y, person.vx, person.vy, 1.0);
        for (const auto& c : clutter) add_target(c.x, c.y, 0.0, 0.0, c.reflectivity);
        rec.radar_truths.push_back(std::move(truths));
    }

    rec.events = emit_events(lum_video, cfg.dvs_threshold);

    const int n_alt = static_cast<int>(std::floor(cfg.duration_s * cfg.altitude_rate)) + 1;
    for (int i = 0; i < n_alt; ++i) {
        const double t = i / cfg.altitude_rate;
        rec.altitude.emplace_back(static_cast<std::int64_t>(std::llround(t * 1e6)),
                                  camera_pose_at(cfg, t).h);
    }
    return rec;
}

}  // namespace uavdet::sim
