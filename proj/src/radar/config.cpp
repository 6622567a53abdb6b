#include "uavdet/radar/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "uavdet/errors.hpp"
#include "uavdet/util/csv.hpp"

namespace uavdet::radar {

void RadarConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(f_c, "f_c");
    positive(alpha, "alpha");
    positive(t_chirp, "t_chirp");
    positive(f_s, "f_s");
    positive(rx_spacing, "rx_spacing");
    positive(v_min >= 0 ? 1.0 : -1.0, "v_min");
    if (n_samples < 2) throw ConfigError("n_samples must be >= 2");
    if (n_chirps < 2) throw ConfigError("n_chirps must be >= 2");
    if (n_rx < 1) throw ConfigError("n_rx must be >= 1");
    if (n_beams < n_rx) throw ConfigError("n_beams must be >= n_rx");
    if (n_rx * rx_spacing <= 1.0) {
        throw ConfigError("n_rx * rx_spacing must exceed 1 wavelength for a finite beamwidth");
    }
    double adc_window = n_samples / f_s;
    if (adc_window > t_chirp) {
        throw ConfigError("ADC window n_samples/f_s exceeds the chirp interval");
    }
}

RadarConfig default_profile() {
    RadarConfig cfg;
    cfg.f_c = 77.0e9;
    cfg.n_chirps = 64;
    cfg.n_samples = 102;
    cfg.f_s = 2.0e6;
    cfg.n_rx = 8;
    cfg.n_beams = 64;
    cfg.v_min = 0.36;
    cfg.snr_db = 20.0;

    const double lambda = kSpeedOfLight / cfg.f_c;
    cfg.t_chirp = lambda / (2.0 * cfg.n_chirps * 0.12);                      // v_res = 0.12 m/s
    cfg.alpha = kSpeedOfLight * cfg.f_s / (2.0 * cfg.n_samples * 0.178);     // d_res = 0.178 m
    cfg.rx_spacing = 1.0 / (cfg.n_rx * std::sin(15.0 * M_PI / 180.0));       // theta_res = 15 deg
    cfg.validate();
    return cfg;
}

void save_profile(const RadarConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "# FMCW radar profile\n";
    out << "# Derived limits: d_res = " << fmt_double(cfg.d_res())
        << " m, d_max = " << fmt_double(cfg.d_max()) << " m,\n";
    out << "#   v_res = " << fmt_double(cfg.v_res()) << " m/s, v_max = " << fmt_double(cfg.v_max())
        << " m/s, theta_res = " << fmt_double(cfg.theta_res_deg()) << " deg.\n";
    out << "# Derivation of the default profile:\n";
    out << "#   n_chirps = 2 * v_max / v_res = 64; t_chirp = lambda / (2 * n_chirps * v_res);\n";
    out << "#   alpha = c * f_s / (2 * n_samples * d_res); rx_spacing = 1 / (n_rx * sin(theta_res)).\n";
    out << "#   d_max = d_res * n_samples / 2; with integer n_samples this cannot equal 9.11 m\n";
    out << "#   while d_res stays 17.8 cm, so the profile keeps d_res exact (d_max = 9.078 m).\n";
    out << "f_c = " << fmt_double(cfg.f_c) << "\n";
    out << "alpha = " << fmt_double(cfg.alpha) << "\n";
    out << "t_chirp = " << fmt_double(cfg.t_chirp) << "\n";
    out << "n_samples = " << cfg.n_samples << "\n";
    out << "f_s = " << fmt_double(cfg.f_s) << "\n";
    out << "n_chirps = " << cfg.n_chirps << "\n";
    out << "n_rx = " << cfg.n_rx << "\n";
    out << "rx_spacing = " << fmt_double(cfg.rx_spacing) << "\n";
    out << "n_beams = " << cfg.n_beams << "\n";
    out << "snr_db = " << fmt_double(cfg.snr_db) << "\n";
    out << "v_min = " << fmt_double(cfg.v_min) << "\n";
}

RadarConfig load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string key, eq, value;
        if (!(ss >> key)) continue;
        if (!(ss >> eq >> value) || eq != "=") {
            throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        }
        kv[key] = value;
    }
    auto get = [&](const char* key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) throw ValidationError(path.string() + ": missing key '" + key + "'");
        return it->second;
    };
    RadarConfig cfg;
    cfg.f_c = std::stod(get("f_c"));
    cfg.alpha = std::stod(get("alpha"));
    cfg.t_chirp = std::stod(get("t_chirp"));
    cfg.n_samples = std::stoi(get("n_samples"));
    cfg.f_s = std::stod(get("f_s"));
    cfg.n_chirps = std::stoi(get("n_chirps"));
    cfg.n_rx = std::stoi(get("n_rx"));
    cfg.rx_spacing = std::stod(get("rx_spacing"));
    cfg.n_beams = std::stoi(get("n_beams"));
    cfg.snr_db = std::stod(get("snr_db"));
    cfg.v_min = std::stod(get("v_min"));
    cfg.validate();
    return cfg;
}

}  // namespace uavdet::radar
