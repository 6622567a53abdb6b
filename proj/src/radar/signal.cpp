#include <cmath>

#include "uavdet/errors.hpp"
#include "uavdet/radar/chain.hpp"

namespace uavdet::radar {

SignalCube synth_beat_signal(const RadarConfig& cfg, const std::vector<TargetTruth>& targets,
                             Rng& rng) {
    cfg.validate();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& t = targets[i];
        if (!(t.distance > 0) || t.distance >= cfg.d_max()) {
            throw ValidationError("range violation: target " + std::to_string(i) + " at " +
                                  std::to_string(t.distance) + " m outside (0, " +
                                  std::to_string(cfg.d_max()) + ") m");
        }
        if (std::abs(t.radial_velocity) >= cfg.v_max()) {
            throw ValidationError("range violation: target " + std::to_string(i) + " velocity " +
                                  std::to_string(t.radial_velocity) + " m/s outside (-" +
                                  std::to_string(cfg.v_max()) + ", " + std::to_string(cfg.v_max()) +
                                  ") m/s");
        }
        if (std::abs(t.aoa_deg) > 90.0) {
            throw ValidationError("range violation: target " + std::to_string(i) +
                                  " angle of arrival outside +-90 deg");
        }
    }

    SignalCube sig;
    sig.n_samples = cfg.n_samples;
    sig.n_chirps = cfg.n_chirps;
    sig.n_rx = cfg.n_rx;
    sig.data.assign(static_cast<std::size_t>(cfg.n_samples) * cfg.n_chirps * cfg.n_rx, {0.0, 0.0});

    for (const auto& t : targets) {
        const double phi = 2.0 * M_PI * cfg.rx_spacing * std::sin(t.aoa_deg * M_PI / 180.0);
        for (int q = 0; q < cfg.n_chirps; ++q) {
            const double d_q = t.distance + t.radial_velocity * q * cfg.t_chirp;
            const double t_d = 2.0 * d_q / kSpeedOfLight;
            // Per-chirp constant part: carrier phase and the residual
            // quadratic term pi*alpha*T_d^2 (negligible at these ranges but
            // kept for fidelity to the chirp model).
            const double phase0 = -2.0 * M_PI * cfg.f_c * t_d + M_PI * cfg.alpha * t_d * t_d;
            const double beat = -2.0 * M_PI * cfg.alpha * t_d / cfg.f_s;  // per-sample increment
            for (int m = 0; m < cfg.n_rx; ++m) {
                const double base = phase0 + m * phi;
                for (int s = 0; s < cfg.n_samples; ++s) {
                    const double ph = base + beat * s;
                    sig.at(s, q, m) += std::complex<double>(t.reflectivity * std::cos(ph),
                                                            t.reflectivity * std::sin(ph));
                }
            }
        }
    }

    // Circularly symmetric complex Gaussian noise; snr_db is defined at the
    // beat-signal level for a unit-reflectivity target.
    const double sigma2 = std::pow(10.0, -cfg.snr_db / 10.0);
    const double s_dim = std::sqrt(sigma2 / 2.0);
    for (auto& v : sig.data) {
        v += std::complex<double>(s_dim * normal01(rng), s_dim * normal01(rng));
    }
    return sig;
}

std::vector<RadarDetection> doppler_filter(const std::vector<RadarDetection>& dets, double v_min) {
    if (v_min < 0) throw ConfigError("v_min must be >= 0");
    std::vector<RadarDetection> kept;
    kept.reserve(dets.size());
    for (const auto& d : dets) {
        if (std::abs(d.doppler_mps) >= v_min) kept.push_back(d);
    }
    return kept;
}

std::vector<RadarDetection> process_frame(const RadarConfig& cfg,
                                          const std::vector<TargetTruth>& targets,
                                          const CfarParams& params, Rng& rng) {
    SignalCube sig = synth_beat_signal(cfg, targets, rng);
    RdaCube cube = rda_process(cfg, sig);
    auto dets = cfar_detect(cfg, cube, params);
    return doppler_filter(dets, cfg.v_min);
}

}  // namespace uavdet::radar
