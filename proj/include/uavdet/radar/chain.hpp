#pragma once

#include "uavdet/radar/config.hpp"
#include "uavdet/radar/types.hpp"
#include "uavdet/util/rng.hpp"

namespace uavdet::radar {

/// Synthesizes one demodulated chirp-frame as the superposition of
/// per-target complex exponentials:
///
///   r_qm(t) = sum_i  xi_i * exp(j(-2 pi alpha T_di t - 2 pi f_c T_di
///                                 + pi alpha T_di^2 + m phi_i))
///
/// with T_di the round-trip delay updated once per chirp (stop-and-go), and
/// phi_i = 2 pi * rx_spacing * sin(aoa_i). Circularly symmetric complex
/// Gaussian noise is added with cfg.snr_db relative to unit reflectivity.
///
/// Throws ValidationError (range violation) for targets outside the
/// unambiguous range/velocity span.
SignalCube synth_beat_signal(const RadarConfig& cfg, const std::vector<TargetTruth>& targets,
                             Rng& rng);

/// Range FFT per (chirp, antenna), Doppler FFT per (range bin, antenna) with
/// zero Doppler centered, azimuth FFT per (range, Doppler) zero-padded to
/// cfg.n_beams. Deterministic for fixed input.
RdaCube rda_process(const RadarConfig& cfg, const SignalCube& signal);

struct CfarParams {
    int guard = 2;        // guard cells on each side (range and Doppler)
    int train = 8;        // training cells on each side beyond the guard band
    double scale = 4.5;   // detection factor over the local mean magnitude
                          // (<= 1 false alarm per noise-only frame at default SNR)
    bool local_max_only = true;  // keep only range-Doppler local maxima
};

/// Cell-averaging CFAR over the range-Doppler plane of every azimuth slice.
/// A cell is detected iff its magnitude exceeds scale * mean(training ring);
/// the ring is clipped at plane borders. Detections are converted to
/// physical units; bins beyond the unambiguous range or with an invalid
/// beam angle are dropped.
std::vector<RadarDetection> cfar_detect(const RadarConfig& cfg, const RdaCube& cube,
                                        const CfarParams& params);

/// Keeps exactly the detections with |doppler| >= v_min, order preserved.
std::vector<RadarDetection> doppler_filter(const std::vector<RadarDetection>& dets, double v_min);

/// Runs the full chain for one frame of target truths.
std::vector<RadarDetection> process_frame(const RadarConfig& cfg,
                                          const std::vector<TargetTruth>& targets,
                                          const CfarParams& params, Rng& rng);

/// Physical coordinates of the azimuth beam index (degrees from boresight).
/// Returns false when the beam's spatial frequency maps outside |sin| <= 1.
bool beam_angle_deg(const RadarConfig& cfg, int beam, double* out_deg);

/// Bin-to-physical-unit mappings of the RDA cube axes.
double range_of_bin(const RadarConfig& cfg, int k);
double velocity_of_bin(const RadarConfig& cfg, int b);

}  // namespace uavdet::radar
