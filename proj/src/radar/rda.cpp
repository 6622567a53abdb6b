#include <fftw3.h>

#include <mutex>
#include <unordered_map>

#include "uavdet/errors.hpp"
#include "uavdet/radar/chain.hpp"

namespace uavdet::radar {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// caller-owned buffers is. Plans are cached per transform length and shared.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    fftw_plan get(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_free(buf);
        plans_.emplace(n, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::unordered_map<int, fftw_plan> plans_;
};

// Forward in-place complex FFT on an fftw-aligned scratch buffer.
class FftScratch {
public:
    explicit FftScratch(int n) : n_(n), buf_(fftw_alloc_complex(static_cast<std::size_t>(n))) {}
    ~FftScratch() { fftw_free(buf_); }
    FftScratch(const FftScratch&) = delete;
    FftScratch& operator=(const FftScratch&) = delete;

    std::complex<double>& operator[](int i) { return reinterpret_cast<std::complex<double>*>(buf_)[i]; }
    void run() { fftw_execute_dft(FftPlans::instance().get(n_), buf_, buf_); }
    void zero() {
        for (int i = 0; i < n_; ++i) (*this)[i] = {0.0, 0.0};
    }

private:
    int n_;
    fftw_complex* buf_;
};

}  // namespace

double range_of_bin(const RadarConfig& cfg, int k) { return k * cfg.d_res(); }

double velocity_of_bin(const RadarConfig& cfg, int b) {
    return (cfg.n_chirps / 2 - b) * cfg.v_res();
}

bool beam_angle_deg(const RadarConfig& cfg, int beam, double* out_deg) {
    const double nu = (beam - cfg.n_beams / 2) / static_cast<double>(cfg.n_beams);
    const double s = nu / cfg.rx_spacing;
    if (s < -1.0 || s > 1.0) return false;
    *out_deg = std::asin(s) * 180.0 / M_PI;
    return true;
}

RdaCube rda_process(const RadarConfig& cfg, const SignalCube& sig) {
    if (sig.n_samples != cfg.n_samples || sig.n_chirps != cfg.n_chirps || sig.n_rx != cfg.n_rx) {
        throw DimensionError("rda_process: signal shape does not match radar config");
    }
    const int ns = cfg.n_samples, nc = cfg.n_chirps, nr = cfg.n_rx, nb = cfg.n_beams;

    // Range FFT per (chirp, antenna). The beat frequencies of the chirp
    // model are negative, so the spectrum is index-flipped to make range
    // bin k correspond to distance k * d_res.
    std::vector<std::complex<double>> r1(static_cast<std::size_t>(ns) * nc * nr);
    {
        FftScratch fft(ns);
        for (int q = 0; q < nc; ++q) {
            for (int m = 0; m < nr; ++m) {
                for (int s = 0; s < ns; ++s) fft[s] = sig.at(s, q, m);
                fft.run();
                for (int k = 0; k < ns; ++k) {
                    r1[(static_cast<std::size_t>(k) * nc + q) * nr + m] = fft[(ns - k) % ns];
                }
            }
        }
    }

    // Doppler FFT per (range bin, antenna), zero Doppler centered.
    std::vector<std::complex<double>> r2(static_cast<std::size_t>(ns) * nc * nr);
    {
        FftScratch fft(nc);
        for (int k = 0; k < ns; ++k) {
            for (int m = 0; m < nr; ++m) {
                for (int q = 0; q < nc; ++q) fft[q] = r1[(static_cast<std::size_t>(k) * nc + q) * nr + m];
                fft.run();
                for (int b = 0; b < nc; ++b) {
                    r2[(static_cast<std::size_t>(k) * nc + b) * nr + m] = fft[(b + nc / 2) % nc];
                }
            }
        }
    }

    // Azimuth FFT per (range, Doppler), zero-padded to n_beams, centered.
    RdaCube cube;
    cube.n_range = ns;
    cube.n_doppler = nc;
    cube.n_beams = nb;
    cube.values.assign(static_cast<std::size_t>(ns) * nc * nb, 0.0);
    {
        FftScratch fft(nb);
        for (int k = 0; k < ns; ++k) {
            for (int b = 0; b < nc; ++b) {
                fft.zero();
                for (int m = 0; m < nr; ++m) fft[m] = r2[(static_cast<std::size_t>(k) * nc + b) * nr + m];
                fft.run();
                for (int a = 0; a < nb; ++a) {
                    cube.at(k, b, a) = std::abs(fft[(a + nb / 2) % nb]);
                }
            }
        }
    }
    return cube;
}

}  // namespace uavdet::radar
