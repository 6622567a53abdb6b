#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uavdet/errors.hpp"
#include "uavdet/prep/calibration.hpp"
#include "uavdet/prep/dvs_frame.hpp"
#include "uavdet/prep/pipeline.hpp"
#include "uavdet/prep/projection.hpp"
#include "uavdet/prep/tensor.hpp"
#include "uavdet/radar/config.hpp"
#include "uavdet/util/rng.hpp"

using namespace uavdet;
using namespace uavdet::prep;

namespace {

sim::DvsEvent ev(int x, int y, std::int64_t t_us, int pol) {
    return {x, y, t_us, static_cast<std::int8_t>(pol)};
}

ProjectionCalibration identity_cal(int w, int h, double f) {
    ProjectionCalibration cal;
    cal.focal_px = f;
    cal.depth_norm_m = radar::default_profile().d_max();
    cal.image_width = w;
    cal.image_height = h;
    return cal;
}

}  // namespace

TEST_CASE("accumulate_dvs: empty window gives an all-zero frame") {
    auto frame = accumulate_dvs({}, 0, 10000, 8, 8);
    for (double v : frame.positive) CHECK(v == 0.0);
    for (double v : frame.negative) CHECK(v == 0.0);
}

TEST_CASE("accumulate_dvs: mean timestamp normalized by the window") {
    std::vector<sim::DvsEvent> events = {ev(3, 2, 2000, +1), ev(3, 2, 4000, +1), ev(3, 2, 6000, +1)};
    auto frame = accumulate_dvs(events, 0, 10000, 8, 8);
    CHECK(frame.positive[2 * 8 + 3] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(frame.negative[2 * 8 + 3] == 0.0);
}

TEST_CASE("accumulate_dvs: window is half-open") {
    std::vector<sim::DvsEvent> events = {ev(0, 0, 10000, +1)};  // exactly at t0 + window
    auto frame = accumulate_dvs(events, 0, 10000, 4, 4);
    CHECK(frame.positive[0] == 0.0);
    auto frame2 = accumulate_dvs(events, 10000, 10000, 4, 4);  // owned by the next window
    CHECK(frame2.positive[0] == 0.0);  // offset 0 -> value 0 but counted
    std::vector<sim::DvsEvent> shifted = {ev(0, 0, 10001, +1)};
    auto frame3 = accumulate_dvs(shifted, 10000, 10000, 4, 4);
    CHECK(frame3.positive[0] == doctest::Approx(1.0 / 10000).epsilon(1e-12));
}

TEST_CASE("accumulate_dvs matches the brute-force per-pixel oracle exactly") {
    Rng rng(314);
    const int w = 6, h = 5;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<sim::DvsEvent> events;
        const int n = 1 + static_cast<int>(uniform_index(rng, 60));
        for (int i = 0; i < n; ++i) {
            events.push_back(ev(static_cast<int>(uniform_index(rng, w)),
                                static_cast<int>(uniform_index(rng, h)),
                                static_cast<std::int64_t>(uniform_index(rng, 30000)),
                                uniform01(rng) < 0.5 ? +1 : -1));
        }
        std::sort(events.begin(), events.end(),
                  [](const auto& a, const auto& b) { return a.t_us < b.t_us; });
        const std::int64_t t0 = 5000, window = 10000;
        auto frame = accumulate_dvs(events, t0, window, w, h);

        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                for (int pol : {+1, -1}) {
                    std::int64_t sum = 0;
                    int cnt = 0;
                    for (const auto& e : events) {
                        if (e.x == x && e.y == y && e.polarity == pol && e.t_us >= t0 &&
                            e.t_us < t0 + window) {
                            sum += e.t_us - t0;
                            ++cnt;
                        }
                    }
                    const double expect =
                        cnt ? static_cast<double>(sum) / cnt / static_cast<double>(window) : 0.0;
                    const double got =
                        (pol > 0) ? frame.positive[y * w + x] : frame.negative[y * w + x];
                    CHECK(got == expect);
                }
            }
        }
    }
}

TEST_CASE("homography: identity correspondences recover the identity") {
    std::vector<Correspondence> pairs;
    for (double x : {0.0, 3.0, 0.5, 4.0, 1.0}) {
        for (double y : {0.0, 2.0, 5.0}) pairs.push_back({x, y, x, y});
    }
    auto fit = estimate_homography(pairs);
    CHECK((fit.homography - Eigen::Matrix3d::Identity()).norm() < 1e-9);
    CHECK(fit.reprojection_rms < 1e-9);
}

TEST_CASE("homography: synthetic matrix recovered from 8 noiseless points") {
    Rng rng(2718);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Matrix3d m;
        m << 1.0 + uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3), uniform(rng, -2, 2),
            uniform(rng, -0.3, 0.3), 1.0 + uniform(rng, -0.3, 0.3), uniform(rng, -2, 2),
            uniform(rng, -0.02, 0.02), uniform(rng, -0.02, 0.02), 1.0;
        std::vector<Correspondence> pairs;
        for (int i = 0; i < 8; ++i) {
            const double x = uniform(rng, -4, 4), y = uniform(rng, 1, 8);
            const Eigen::Vector3d p = m * Eigen::Vector3d(x, y, 1);
            pairs.push_back({x, y, p.x() / p.z(), p.y() / p.z()});
        }
        auto fit = estimate_homography(pairs);
        CHECK((fit.homography - m).norm() / m.norm() < 1e-6);
    }
}

TEST_CASE("homography: under-determined and collinear configurations fail") {
    std::vector<Correspondence> three = {{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    CHECK_THROWS_AS(estimate_homography(three), CalibrationError);

    std::vector<Correspondence> collinear;
    for (int i = 0; i < 8; ++i) {
        collinear.push_back({static_cast<double>(i), 2.0 * i, static_cast<double>(i), 2.0 * i});
    }
    CHECK_THROWS_AS(estimate_homography(collinear), CalibrationError);
}

TEST_CASE("projection: worked intermediate-coordinate example") {
    // Range 2 m at boresight (array-axis angle 90 deg), h = 1 m, f = 1 px.
    radar::RadarDetection det{2.0, 0.0, 0.0, 1.0};
    double xi, yi;
    intermediate_coords(det, 1.0, 1.0, &xi, &yi);
    CHECK(xi == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(yi == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("projection: altitude scaling is exactly homogeneous of degree -1") {
    radar::RadarDetection det{5.5, 23.0, 0.0, 1.0};
    double x1, y1, x2, y2;
    intermediate_coords(det, 1.7, 55.0, &x1, &y1);
    intermediate_coords(det, 3.4, 55.0, &x2, &y2);
    CHECK(x2 == x1 / 2);
    CHECK(y2 == y1 / 2);
}

TEST_CASE("projection: empty input, depth endpoint and altitude errors") {
    auto cal = identity_cal(346, 260, 1.0);
    CHECK(project_detections({}, 2.0, cal).empty());
    CHECK_THROWS_AS(project_detections({}, 0.0, cal), ValidationError);
    CHECK_THROWS_AS(project_detections({}, -1.0, cal), ValidationError);

    // A detection whose forward depth equals the normalization constant has
    // depth_norm exactly 1. Use a homography that maps it into the image.
    radar::RadarDetection det{cal.depth_norm_m, 0.0, 0.0, 1.0};
    ProjectionCalibration cal2 = cal;
    cal2.homography << 0.1, 0, 173.0, 0, 0.1, 200.0, 0, 0, 1.0;
    auto pts = project_detections({det}, 2.0, cal2);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].depth_norm == 1.0);
}

TEST_CASE("projection: homography round-trip recovers intermediate coordinates") {
    ProjectionCalibration cal = identity_cal(346, 260, 60.0);
    cal.homography << 0.5, 0.0, 173.0, 0.0, -0.5, 100.0, 0.001, -0.001, 1.0;
    radar::RadarDetection det{4.0, -15.0, 0.0, 1.0};
    const double h = 2.1;
    auto pts = project_detections({det}, h, cal);
    REQUIRE(pts.size() == 1);
    const Eigen::Vector3d back = cal.homography.inverse() * Eigen::Vector3d(pts[0].u, pts[0].v, 1.0);
    double xi, yi;
    intermediate_coords(det, h, cal.focal_px, &xi, &yi);
    CHECK(back.x() / back.z() == doctest::Approx(xi).epsilon(1e-6));
    CHECK(back.y() / back.z() == doctest::Approx(yi).epsilon(1e-6));
}

TEST_CASE("rasterize_columns: empty points give an all-zero channel") {
    auto cal = identity_cal(64, 48, 55.0);
    auto channel = rasterize_columns({}, cal);
    for (double v : channel) CHECK(v == 0.0);
}

TEST_CASE("rasterize_columns: column height follows the height prior") {
    auto cal = identity_cal(346, 260, 300.0);
    cal.height_prior_m = 1.5;
    ProjectedPoint p;
    p.u = 173.0;
    p.v = 200.0;
    p.depth_norm = 3.0 / cal.depth_norm_m;  // metric depth 3 m
    auto channel = rasterize_columns({p}, cal, 1);
    int set = 0;
    for (double v : channel) set += (v > 0);
    CHECK(set == 150);  // f * prior / depth = 300 * 1.5 / 3
    // Column extends upward from the anchor.
    CHECK(channel[200 * 346 + 173] > 0);
    CHECK(channel[(200 - 149) * 346 + 173] > 0);
    CHECK(channel[(200 - 150) * 346 + 173] == 0.0);
}

TEST_CASE("rasterize_columns: overlapping columns keep the nearer depth") {
    auto cal = identity_cal(64, 48, 30.0);
    ProjectedPoint far_pt{32.0, 40.0, 0.6};
    ProjectedPoint near_pt{33.0, 40.0, 0.3};
    auto channel = rasterize_columns({far_pt, near_pt}, cal, 3);
    CHECK(channel[40 * 64 + 32] == 0.3);  // overlap region holds the smaller depth
    CHECK(channel[40 * 64 + 31] == 0.6);  // far-only pixel
}

TEST_CASE("assemble_tensor: trivial cases and channel round-trip") {
    const int w = 346, h = 260;
    ImageU8 rgb;
    rgb.width = w;
    rgb.height = h;
    rgb.pixels.assign(static_cast<std::size_t>(w) * h * 3, 0);
    DvsFrame dvs;
    dvs.width = w;
    dvs.height = h;
    dvs.positive.assign(static_cast<std::size_t>(w) * h, 0.0);
    dvs.negative.assign(static_cast<std::size_t>(w) * h, 0.0);
    std::vector<double> radar_channel(static_cast<std::size_t>(w) * h, 0.0);

    SUBCASE("all-zero inputs give an all-zero tensor of the right shape") {
        auto t = assemble_tensor(rgb, dvs, radar_channel, 0);
        CHECK(t.width == 346);
        CHECK(t.height == 260);
        CHECK(t.channels == 6);
        for (float v : t.data) CHECK(v == 0.0f);
    }

    SUBCASE("channel extraction returns the originals bit-exactly") {
        Rng rng(99);
        for (auto& px : rgb.pixels) px = static_cast<std::uint8_t>(uniform_index(rng, 256));
        for (auto& v : dvs.positive) v = uniform01(rng);
        for (auto& v : dvs.negative) v = uniform01(rng);
        for (auto& v : radar_channel) v = uniform01(rng);
        auto t = assemble_tensor(rgb, dvs, radar_channel, 3);
        CHECK(t.frame_index == 3);

        auto c5 = extract_channel(t, 5);
        auto c3 = extract_channel(t, 3);
        auto c0 = extract_channel(t, 0);
        for (std::size_t i = 0; i < c5.size(); ++i) {
            CHECK(c5[i] == static_cast<float>(radar_channel[i]));
            CHECK(c3[i] == static_cast<float>(dvs.positive[i]));
        }
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                CHECK(c0[static_cast<std::size_t>(y) * w + x] ==
                      static_cast<float>(rgb.at(x, y, 0) / 255.0));

        // The concatenation preserves the max norm.
        float tensor_max = 0;
        for (float v : t.data) tensor_max = std::max(tensor_max, v);
        float input_max = 0;
        for (auto& px : rgb.pixels) input_max = std::max(input_max, static_cast<float>(px / 255.0));
        for (double v : dvs.positive) input_max = std::max(input_max, static_cast<float>(v));
        for (double v : dvs.negative) input_max = std::max(input_max, static_cast<float>(v));
        for (double v : radar_channel) input_max = std::max(input_max, static_cast<float>(v));
        CHECK(tensor_max == input_max);
    }

    SUBCASE("shape mismatches are dimension errors") {
        DvsFrame small;
        small.width = w / 2;
        small.height = h;
        small.positive.assign(static_cast<std::size_t>(w / 2) * h, 0.0);
        small.negative = small.positive;
        CHECK_THROWS_AS(assemble_tensor(rgb, small, radar_channel, 0), DimensionError);
        std::vector<double> bad_radar(10, 0.0);
        CHECK_THROWS_AS(assemble_tensor(rgb, dvs, bad_radar, 0), DimensionError);
    }
}

TEST_CASE("tensor store round-trips") {
    const auto path = std::filesystem::temp_directory_path() / "uavdet_test_tensors.bin";
    Rng rng(4);
    std::vector<InputTensor> tensors;
    {
        TensorWriter writer(path, 16, 12, 6);
        for (int i = 0; i < 3; ++i) {
            InputTensor t;
            t.width = 16;
            t.height = 12;
            t.channels = 6;
            t.frame_index = i;
            t.data.resize(6 * 16 * 12);
            for (auto& v : t.data) v = static_cast<float>(uniform01(rng));
            tensors.push_back(t);
            writer.append(t);
        }
        writer.close();
    }
    TensorStore store(path);
    CHECK(store.count() == 3);
    CHECK(store.width() == 16);
    for (int i = 0; i < 3; ++i) {
        auto t = store.load(i);
        CHECK(t.data == tensors[i].data);
    }
    CHECK(std::filesystem::exists(path.string() + ".index.csv"));
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".index.csv");
}

TEST_CASE("person radar truth projects inside the box's horizontal extent") {
    sim::SceneConfig scene;
    scene.seed = 31;
    scene.duration_s = 5.0;
    scene.difficulty = sim::Difficulty::Medium;
    auto rec = sim::render_scene(scene);

    auto rcfg = radar::default_profile();
    auto cal = calibrate_from_scene(scene, rcfg.d_max());
    CHECK(std::abs(cal.homography(2, 2) - 1.0) < 1e-9);

    int present = 0, inside = 0;
    for (int n = 0; n < rec.frame_count(); ++n) {
        if (!rec.labels[n].present || rec.radar_truths[n].empty()) continue;
        // The person is the only moving target in this scene.
        const auto& t = rec.radar_truths[n][0];
        radar::RadarDetection det{t.distance, t.aoa_deg, t.radial_velocity, 1.0};
        const double h = altitude_at(rec.altitude, rec.frame_time_us(n));
        auto pts = project_detections({det}, h, cal);
        if (pts.empty()) continue;
        ++present;
        const double x1 = rec.labels[n].x1 * scene.width, x2 = rec.labels[n].x2 * scene.width;
        if (pts[0].u >= x1 - 1.0 && pts[0].u <= x2 + 1.0) ++inside;
    }
    REQUIRE(present > 20);
    CHECK(static_cast<double>(inside) / present >= 0.95);
}
