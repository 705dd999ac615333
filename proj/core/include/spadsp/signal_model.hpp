#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "spadsp/numerics.hpp"

namespace spadsp {

struct SparseChannel {
    ComplexVector taps;
    SupportSet true_support;

    std::size_t length() const noexcept { return taps.size(); }
};

// Validates that nonzero taps sit exactly on the support and the energy is positive.
SparseChannel make_channel(ComplexVector taps);

// Length-64 channel with taps 0.3536+0.3536i at 0-based indices 0, 31, 32, 63.
SparseChannel make_paper_channel();

// `active` taps at distinct uniformly drawn positions, i.i.d. complex Gaussian
// amplitudes, scaled to unit energy.
SparseChannel make_random_channel(std::size_t length, std::size_t active, std::uint64_t seed);

struct PhaseTrajectory {
    enum class Mode { kConstantZero, kLinearRamp };

    Mode mode = Mode::kConstantZero;
    double rate = 0.0; // rad/sample

    static PhaseTrajectory zero() { return {}; }
    static PhaseTrajectory ramp(double rate) { return {Mode::kLinearRamp, rate}; }

    // θ(n), wrapped to (-π, π].
    double at(std::int64_t n) const;
};

double wrap_phase(double radians);

struct NoiseSpec {
    double snr_db = 0.0;
    double variance = 0.0;
};

double noise_variance_from_snr(double snr_db, double signal_power);
NoiseSpec make_noise_spec(double snr_db, const SparseChannel& channel, double input_variance = 1.0);

// Circularly symmetric complex Gaussian, total variance 1. Deterministic in seed.
ComplexVector generate_input(std::size_t n_samples, std::uint64_t seed);

// Circularly symmetric complex Gaussian noise of the given total variance.
// Uses a stream independent of generate_input for the same seed.
ComplexVector generate_noise(std::size_t n_samples, double variance, std::uint64_t seed);

/// Sliding regressor x(n) = [x(n), x(n-1), ..., x(n-L+1)], zero-padded before
/// the first sample.
class TapDelayLine {
public:
    explicit TapDelayLine(std::size_t length);

    const ComplexVector& push(Complex sample);
    const ComplexVector& window() const noexcept { return window_; }
    void reset();

private:
    ComplexVector window_;
};

// y(n) = e^{jθ} Σ_l h_l x(n-l) + q(n)
Complex emit_received(const SparseChannel& h, const ComplexVector& x_window, double theta, Complex noise_sample);

// Full received sequence for input x, phase trajectory and additive noise.
std::vector<Complex> simulate_received(const SparseChannel& h, std::span<const Complex> x,
                                       const PhaseTrajectory& phase, std::span<const Complex> noise);

enum class BasebandFormat { kInterleavedF32, kCsv };

BasebandFormat parse_baseband_format(const std::string& name);

struct BasebandRecord {
    std::vector<Complex> x; // transmitted
    std::vector<Complex> y; // received
};

// Interleaved-f32: little-endian float32 (Re x, Im x, Re y, Im y) per sample.
// CSV: four numeric columns re_x, im_x, re_y, im_y with an optional header row.
BasebandRecord ingest_baseband(const std::filesystem::path& path, BasebandFormat format);

void write_baseband(const std::filesystem::path& path, BasebandFormat format, const BasebandRecord& record);

} // namespace spadsp
