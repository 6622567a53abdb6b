#pragma once

#include <stdexcept>
#include <string>

namespace uavdet {

/// Invalid or inconsistent configuration (window sizes, thresholds, schedules).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

/// Array shape or size mismatch between producer and consumer.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& msg) : std::runtime_error("dimension error: " + msg) {}
};

/// Malformed or inconsistent input data (files, labels, streams).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error("validation error: " + msg) {}
};

/// Extrinsic calibration could not be estimated (degenerate geometry).
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& msg) : std::runtime_error("calibration error: " + msg) {}
};

/// Synthetic scene generation failed (out-of-bounds trajectory, bad profile).
class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& msg) : std::runtime_error("generation error: " + msg) {}
};

}  // namespace uavdet
