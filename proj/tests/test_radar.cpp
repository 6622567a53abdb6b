#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "uavdet/errors.hpp"
#include "uavdet/radar/chain.hpp"
#include "uavdet/radar/config.hpp"

using namespace uavdet;
using namespace uavdet::radar;

namespace {

RadarConfig noiseless_profile() {
    auto cfg = default_profile();
    cfg.snr_db = 300.0;
    return cfg;
}

struct CubePeak {
    int k = 0, b = 0, a = 0;
    double mag = -1.0;
};

CubePeak cube_argmax(const RdaCube& cube) {
    CubePeak p;
    for (int k = 0; k < cube.n_range; ++k)
        for (int b = 0; b < cube.n_doppler; ++b)
            for (int a = 0; a < cube.n_beams; ++a)
                if (cube.at(k, b, a) > p.mag) p = {k, b, a, cube.at(k, b, a)};
    return p;
}

// Independent CA-CFAR oracle: direct threshold evaluation over all cells,
// no summed-area tables.
std::vector<std::array<int, 3>> cfar_oracle(const RdaCube& cube, int guard, int train, double scale) {
    std::vector<std::array<int, 3>> hits;
    const int w = guard + train;
    for (int a = 0; a < cube.n_beams; ++a) {
        for (int k = 0; k < cube.n_range; ++k) {
            for (int b = 0; b < cube.n_doppler; ++b) {
                double sum = 0.0;
                int cnt = 0;
                for (int kk = std::max(0, k - w); kk <= std::min(cube.n_range - 1, k + w); ++kk) {
                    for (int bb = std::max(0, b - w); bb <= std::min(cube.n_doppler - 1, b + w); ++bb) {
                        if (std::abs(kk - k) <= guard && std::abs(bb - b) <= guard) continue;
                        sum += cube.at(kk, bb, a);
                        ++cnt;
                    }
                }
                if (cube.at(k, b, a) > scale * sum / cnt) hits.push_back({k, b, a});
            }
        }
    }
    return hits;
}

RadarDetection strongest(const std::vector<RadarDetection>& dets) {
    REQUIRE(!dets.empty());
    return *std::max_element(dets.begin(), dets.end(),
                             [](const auto& x, const auto& y) { return x.magnitude < y.magnitude; });
}

}  // namespace

TEST_CASE("default profile reproduces the reference radar limits") {
    auto cfg = default_profile();
    CHECK(cfg.d_res() == doctest::Approx(0.178).epsilon(1e-12));
    CHECK(cfg.v_res() == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(cfg.v_max() == doctest::Approx(3.84).epsilon(1e-12));
    CHECK(cfg.theta_res_deg() == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(cfg.v_min == doctest::Approx(0.36));
    // d_max = d_res * n_samples/2 cannot hit 9.11 m exactly for integer
    // n_samples with d_res = 17.8 cm; the profile keeps it within 0.5%.
    CHECK(std::abs(cfg.d_max() - 9.11) / 9.11 < 0.005);
    CHECK(cfg.d_max() == doctest::Approx(cfg.d_res() * cfg.n_samples / 2.0).epsilon(1e-12));
    CHECK(cfg.v_max() == doctest::Approx(cfg.v_res() * cfg.n_chirps / 2.0).epsilon(1e-12));
}

TEST_CASE("profile file round-trips") {
    auto cfg = default_profile();
    auto path = std::filesystem::temp_directory_path() / "uavdet_test_profile.txt";
    save_profile(cfg, path);
    auto back = load_profile(path);
    CHECK(back.f_c == cfg.f_c);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.t_chirp == cfg.t_chirp);
    CHECK(back.n_samples == cfg.n_samples);
    CHECK(back.rx_spacing == cfg.rx_spacing);
    CHECK(back.v_min == cfg.v_min);
    std::filesystem::remove(path);
}

TEST_CASE("empty target list yields noise only") {
    auto cfg = noiseless_profile();  // 300 dB SNR: noise ~1e-15
    Rng rng(7);
    auto sig = synth_beat_signal(cfg, {}, rng);
    double peak = 0.0;
    for (const auto& v : sig.data) peak = std::max(peak, std::abs(v));
    CHECK(peak < 1e-12);
}

TEST_CASE("out-of-span targets are rejected with a range violation") {
    auto cfg = default_profile();
    Rng rng(1);
    CHECK_THROWS_WITH_AS(synth_beat_signal(cfg, {{12.0, 0.0, 0.0, 1.0}}, rng),
                         doctest::Contains("range violation"), ValidationError);
    CHECK_THROWS_AS(synth_beat_signal(cfg, {{4.0, 0.0, 5.0, 1.0}}, rng), ValidationError);
    CHECK_THROWS_AS(synth_beat_signal(cfg, {{4.0, 95.0, 0.0, 1.0}}, rng), ValidationError);
}

TEST_CASE("single static target lands on the closed-form range bin") {
    auto cfg = noiseless_profile();
    Rng rng(3);
    auto sig = synth_beat_signal(cfg, {{4.50, 0.0, 0.0, 1.0}}, rng);
    auto cube = rda_process(cfg, sig);
    auto peak = cube_argmax(cube);
    // Beat frequency f_b = 2 alpha d / c -> bin round(d / d_res).
    const int expected_bin = static_cast<int>(std::lround(4.50 / cfg.d_res()));
    CHECK(peak.k == expected_bin);
    CHECK(peak.b == cfg.n_chirps / 2);   // zero Doppler centered
    CHECK(peak.a == cfg.n_beams / 2);    // boresight beam
    CHECK(std::abs(range_of_bin(cfg, peak.k) - 4.50) <= 0.178);
}

TEST_CASE("Doppler peak maps back to the true velocity within v_res") {
    auto cfg = noiseless_profile();
    for (double v : {1.0, -1.0, 0.36, 2.5, -3.3}) {
        Rng rng(11);
        auto sig = synth_beat_signal(cfg, {{4.0, 0.0, v, 1.0}}, rng);
        auto cube = rda_process(cfg, sig);
        auto peak = cube_argmax(cube);
        CHECK(std::abs(velocity_of_bin(cfg, peak.b) - v) <= cfg.v_res() + 1e-12);
        // Sign convention: receding (v > 0) occupies bins below center.
        if (v > 0) CHECK(peak.b < cfg.n_chirps / 2);
        if (v < 0) CHECK(peak.b > cfg.n_chirps / 2);
    }
}

TEST_CASE("all-zero signal produces an all-zero cube") {
    auto cfg = default_profile();
    SignalCube sig;
    sig.n_samples = cfg.n_samples;
    sig.n_chirps = cfg.n_chirps;
    sig.n_rx = cfg.n_rx;
    sig.data.assign(static_cast<std::size_t>(cfg.n_samples) * cfg.n_chirps * cfg.n_rx, {0, 0});
    auto cube = rda_process(cfg, sig);
    for (double v : cube.values) CHECK(v == 0.0);
}

TEST_CASE("rda_process rejects mismatched shapes") {
    auto cfg = default_profile();
    SignalCube sig;
    sig.n_samples = cfg.n_samples - 1;
    sig.n_chirps = cfg.n_chirps;
    sig.n_rx = cfg.n_rx;
    sig.data.assign(static_cast<std::size_t>(sig.n_samples) * sig.n_chirps * sig.n_rx, {0, 0});
    CHECK_THROWS_AS(rda_process(cfg, sig), DimensionError);
}

TEST_CASE("two separated targets produce two local range maxima") {
    auto cfg = noiseless_profile();
    Rng rng(5);
    auto sig = synth_beat_signal(cfg, {{3.0, 0.0, 0.0, 1.0}, {6.0, 0.0, 0.0, 1.0}}, rng);
    auto cube = rda_process(cfg, sig);
    // Brute-force 1-D peak search along range at the zero-Doppler boresight line.
    const int b0 = cfg.n_chirps / 2, a0 = cfg.n_beams / 2;
    std::vector<int> peaks;
    for (int k = 1; k + 1 < cube.n_range / 2; ++k) {
        double m = cube.at(k, b0, a0);
        if (m > cube.at(k - 1, b0, a0) && m > cube.at(k + 1, b0, a0) &&
            m > 0.2 * cube_argmax(cube).mag) {
            peaks.push_back(k);
        }
    }
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs(range_of_bin(cfg, peaks[0]) - 3.0) <= cfg.d_res());
    CHECK(std::abs(range_of_bin(cfg, peaks[1]) - 6.0) <= cfg.d_res());
}

TEST_CASE("CFAR on a uniform cube detects nothing") {
    auto cfg = default_profile();
    RdaCube cube;
    cube.n_range = cfg.n_samples;
    cube.n_doppler = cfg.n_chirps;
    cube.n_beams = cfg.n_beams;
    cube.values.assign(static_cast<std::size_t>(cube.n_range) * cube.n_doppler * cube.n_beams, 1.0);
    CHECK(cfar_detect(cfg, cube, {}).empty());
}

TEST_CASE("CFAR finds exactly one injected peak, matching the brute-force oracle") {
    auto cfg = default_profile();
    RdaCube cube;
    cube.n_range = cfg.n_samples;
    cube.n_doppler = cfg.n_chirps;
    cube.n_beams = cfg.n_beams;
    cube.values.assign(static_cast<std::size_t>(cube.n_range) * cube.n_doppler * cube.n_beams, 1.0);
    const int k0 = 10, b0 = 20, a0 = 32;
    cube.at(k0, b0, a0) = 20.0;

    CfarParams params;
    auto dets = cfar_detect(cfg, cube, params);
    auto oracle = cfar_oracle(cube, params.guard, params.train, params.scale);
    REQUIRE(oracle.size() == 1);
    CHECK(oracle[0] == std::array<int, 3>{k0, b0, a0});
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].range_m == range_of_bin(cfg, k0));
    CHECK(dets[0].doppler_mps == velocity_of_bin(cfg, b0));
    double angle;
    REQUIRE(beam_angle_deg(cfg, a0, &angle));
    CHECK(dets[0].azimuth_deg == angle);
    CHECK(dets[0].magnitude == 20.0);
}

TEST_CASE("CFAR rejects training windows larger than the cube") {
    auto cfg = default_profile();
    RdaCube cube;
    cube.n_range = cfg.n_samples;
    cube.n_doppler = cfg.n_chirps;
    cube.n_beams = cfg.n_beams;
    cube.values.assign(static_cast<std::size_t>(cube.n_range) * cube.n_doppler * cube.n_beams, 1.0);
    CfarParams params;
    params.train = 40;  // 2*(2+40)+1 > 64 Doppler bins
    CHECK_THROWS_AS(cfar_detect(cfg, cube, params), ConfigError);
}

TEST_CASE("noiseless single-target chain recovers range within d_res") {
    auto cfg = noiseless_profile();
    Rng rng(9);
    auto sig = synth_beat_signal(cfg, {{4.2, 10.0, 0.5, 1.0}}, rng);
    auto cube = rda_process(cfg, sig);
    auto dets = cfar_detect(cfg, cube, {});
    auto best = strongest(dets);
    CHECK(std::abs(best.range_m - 4.2) <= cfg.d_res());
    CHECK(std::abs(best.doppler_mps - 0.5) <= cfg.v_res());
    CHECK(std::abs(best.azimuth_deg - 10.0) <= cfg.theta_res_deg());
}

TEST_CASE("doppler_filter keeps exactly the fast-enough detections") {
    auto det = [](double v) {
        RadarDetection d;
        d.doppler_mps = v;
        return d;
    };
    SUBCASE("worked examples") {
        auto out = doppler_filter({det(0.1), det(0.5), det(-0.4)}, 0.36);
        REQUIRE(out.size() == 2);
        CHECK(out[0].doppler_mps == 0.5);
        CHECK(out[1].doppler_mps == -0.4);
        CHECK(doppler_filter({det(0.20)}, 0.36).empty());
        CHECK(doppler_filter({det(0.20), det(0.1)}, 0.0).size() == 2);
    }
    SUBCASE("idempotent and commutes with concatenation") {
        Rng rng(21);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<RadarDetection> a, b;
            for (int i = 0; i < 10; ++i) a.push_back(det(uniform(rng, -4, 4)));
            for (int i = 0; i < 7; ++i) b.push_back(det(uniform(rng, -4, 4)));
            auto fa = doppler_filter(a, 0.36);
            auto fb = doppler_filter(b, 0.36);
            auto once = doppler_filter(fa, 0.36);
            REQUIRE(once.size() == fa.size());
            for (std::size_t i = 0; i < fa.size(); ++i) CHECK(once[i].doppler_mps == fa[i].doppler_mps);

            std::vector<RadarDetection> ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            auto fab = doppler_filter(ab, 0.36);
            std::vector<RadarDetection> fafb = fa;
            fafb.insert(fafb.end(), fb.begin(), fb.end());
            REQUIRE(fab.size() == fafb.size());
            for (std::size_t i = 0; i < fab.size(); ++i) CHECK(fab[i].doppler_mps == fafb[i].doppler_mps);
        }
    }
}

TEST_CASE("recovered range is affine in true distance with unit slope") {
    auto cfg = noiseless_profile();
    const int n = 20;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double d = 1.0 + (cfg.d_max() * 0.9 - 1.0) * i / (n - 1);
        Rng rng(100 + i);
        auto dets = cfar_detect(cfg, rda_process(cfg, synth_beat_signal(cfg, {{d, 0.0, 0.0, 1.0}}, rng)), {});
        double r = strongest(dets).range_m;
        sx += d;
        sy += r;
        sxx += d * d;
        sxy += d * r;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - 1.0) < 0.01);
}

TEST_CASE("CFAR false-alarm count decreases with scale on pure-noise cubes") {
    auto cfg = default_profile();
    const double scales[3] = {3.2, 3.8, 4.5};
    long counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(500 + trial);
        auto cube = rda_process(cfg, synth_beat_signal(cfg, {}, rng));
        for (int s = 0; s < 3; ++s) {
            CfarParams params;
            params.scale = scales[s];
            counts[s] += static_cast<long>(cfar_detect(cfg, cube, params).size());
        }
    }
    CHECK(counts[0] >= counts[1]);
    CHECK(counts[1] >= counts[2]);
    CHECK(counts[0] > counts[2]);
    // Default scale keeps noise-only frames essentially clean.
    CHECK(counts[2] <= 100);
}

TEST_CASE("detection CSV round-trips") {
    auto path = std::filesystem::temp_directory_path() / "uavdet_test_dets.csv";
    std::map<int, std::vector<RadarDetection>> by_frame;
    by_frame[0] = {{1.5, -12.25, 0.48, 33.0}};
    by_frame[2] = {{3.25, 4.5, -1.92, 11.0}, {7.75, 0.0, 0.6, 5.5}};
    save_detections_csv(path, by_frame);
    auto back = load_detections_csv(path);
    REQUIRE(back.size() == 2);
    REQUIRE(back[2].size() == 2);
    CHECK(back[0][0].range_m == 1.5);
    CHECK(back[0][0].azimuth_deg == -12.25);
    CHECK(back[2][1].doppler_mps == 0.6);
    std::filesystem::remove(path);
}
