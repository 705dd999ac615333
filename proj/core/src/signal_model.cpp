#include "spadsp/signal_model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "spadsp/error.hpp"

namespace spadsp {

namespace {

// Independent deterministic streams per (seed, purpose).
enum class Stream : std::uint64_t { kInput = 1, kNoise = 2, kChannel = 3 };

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

ComplexVector complex_gaussian(std::size_t n, double variance, std::mt19937_64& engine) {
    ComplexVector out(n);
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    for (auto& c : out.span()) {
        const double re = normal(engine);
        const double im = normal(engine);
        c = {re, im};
    }
    return out;
}

} // namespace

SparseChannel make_channel(ComplexVector taps) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (taps.span()[i] != Complex{}) support.push_back(i);
    }
    const double energy = taps.squared_norm();
    if (!taps.all_finite() || !(energy > 0.0) || !std::isfinite(energy)) {
        throw ParameterError("SparseChannel: tap energy must be finite and positive");
    }
    SupportSet set(taps.size(), std::move(support));
    return {std::move(taps), std::move(set)};
}

SparseChannel make_paper_channel() {
    ComplexVector taps(64);
    for (std::size_t i : {0u, 31u, 32u, 63u}) taps[i] = Complex{0.3536, 0.3536};
    return make_channel(std::move(taps));
}

SparseChannel make_random_channel(std::size_t length, std::size_t active, std::uint64_t seed) {
    if (active == 0 || active > length) {
        throw ParameterError(fmt::format("make_random_channel: active={} outside [1, {}]", active, length));
    }
    auto engine = make_engine(seed, Stream::kChannel);
    std::vector<std::size_t> positions(length);
    for (std::size_t i = 0; i < length; ++i) positions[i] = i;
    std::shuffle(positions.begin(), positions.end(), engine);
    positions.resize(active);

    ComplexVector taps(length);
    const auto amplitudes = complex_gaussian(active, 1.0, engine);
    for (std::size_t k = 0; k < active; ++k) {
        Complex a = amplitudes.span()[k];
        // a draw of exactly zero would silently shrink the support
        if (a == Complex{}) a = Complex{1.0, 0.0};
        taps[positions[k]] = a;
    }
    const double scale = 1.0 / std::sqrt(taps.squared_norm());
    for (auto& c : taps.span()) c *= scale;
    return make_channel(std::move(taps));
}

double wrap_phase(double radians) {
    constexpr double pi = std::numbers::pi;
    double w = std::remainder(radians, 2.0 * pi); // [-π, π]
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

double PhaseTrajectory::at(std::int64_t n) const {
    if (mode == Mode::kConstantZero) return 0.0;
    return wrap_phase(rate * static_cast<double>(n));
}

double noise_variance_from_snr(double snr_db, double signal_power) {
    if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
        throw ParameterError(fmt::format("noise_variance_from_snr: signal power {} must be positive", signal_power));
    }
    return signal_power * std::pow(10.0, -snr_db / 10.0);
}

NoiseSpec make_noise_spec(double snr_db, const SparseChannel& channel, double input_variance) {
    return {snr_db, noise_variance_from_snr(snr_db, channel.taps.squared_norm() * input_variance)};
}

ComplexVector generate_input(std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw ParameterError("generate_input: n_samples must be >= 1");
    auto engine = make_engine(seed, Stream::kInput);
    return complex_gaussian(n_samples, 1.0, engine);
}

ComplexVector generate_noise(std::size_t n_samples, double variance, std::uint64_t seed) {
    if (n_samples == 0) throw ParameterError("generate_noise: n_samples must be >= 1");
    if (!(variance >= 0.0)) throw ParameterError("generate_noise: variance must be nonnegative");
    auto engine = make_engine(seed, Stream::kNoise);
    return complex_gaussian(n_samples, variance, engine);
}

TapDelayLine::TapDelayLine(std::size_t length) : window_(length) {}

const ComplexVector& TapDelayLine::push(Complex sample) {
    auto w = window_.span();
    std::shift_right(w.begin(), w.end(), 1);
    w[0] = sample;
    return window_;
}

void TapDelayLine::reset() { window_.fill(Complex{}); }

Complex emit_received(const SparseChannel& h, const ComplexVector& x_window, double theta, Complex noise_sample) {
    if (x_window.size() != h.length()) {
        throw ParameterError(fmt::format("emit_received: window length {} != channel length {}", x_window.size(),
                                         h.length()));
    }
    const auto taps = h.taps.span();
    const auto x = x_window.span();
    Complex acc{};
    for (std::size_t l : h.true_support) acc += taps[l] * x[l];
    return std::polar(1.0, theta) * acc + noise_sample;
}

std::vector<Complex> simulate_received(const SparseChannel& h, std::span<const Complex> x,
                                       const PhaseTrajectory& phase, std::span<const Complex> noise) {
    if (noise.size() != x.size()) throw ParameterError("simulate_received: noise length != input length");
    TapDelayLine line(h.length());
    std::vector<Complex> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const auto& window = line.push(x[n]);
        y[n] = emit_received(h, window, phase.at(static_cast<std::int64_t>(n) + 1), noise[n]);
    }
    return y;
}

BasebandFormat parse_baseband_format(const std::string& name) {
    if (name == "interleaved-f32" || name == "f32") return BasebandFormat::kInterleavedF32;
    if (name == "csv") return BasebandFormat::kCsv;
    throw ParameterError("unknown baseband format '" + name + "' (expected interleaved-f32 or csv)");
}

namespace {

std::uint32_t to_little_endian(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
    }
    return v;
}

BasebandRecord read_f32(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(ErrorCode::kFileNotFound, "cannot open " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) throw IoError(ErrorCode::kEmptyInput, path.string() + ": empty input");
    if (bytes.size() % 4 != 0) {
        throw IoError(ErrorCode::kMalformedRecord,
                      fmt::format("{}: size {} is not a whole number of float32 values", path.string(), bytes.size()));
    }
    if (bytes.size() % 16 != 0) {
        throw IoError(ErrorCode::kLengthMismatch,
                      fmt::format("{}: trailing partial record, x and y lengths differ", path.string()));
    }
    const std::size_t n_values = bytes.size() / 4;
    std::vector<float> values(n_values);
    for (std::size_t i = 0; i < n_values; ++i) {
        std::uint32_t raw;
        std::memcpy(&raw, bytes.data() + 4 * i, 4);
        values[i] = std::bit_cast<float>(to_little_endian(raw));
        if (!std::isfinite(values[i])) {
            throw IoError(ErrorCode::kMalformedRecord,
                          fmt::format("{}: nonfinite value in record {}", path.string(), i / 4));
        }
    }
    BasebandRecord rec;
    rec.x.reserve(n_values / 4);
    rec.y.reserve(n_values / 4);
    for (std::size_t i = 0; i < n_values; i += 4) {
        rec.x.emplace_back(values[i], values[i + 1]);
        rec.y.emplace_back(values[i + 2], values[i + 3]);
    }
    return rec;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string{} : field.substr(first, last - first + 1));
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

BasebandRecord read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(ErrorCode::kFileNotFound, "cannot open " + path.string());
    BasebandRecord rec;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_fields(line);
        double v[4];
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size() && i < 4; ++i) numeric = numeric && parse_double(fields[i], v[i]);
        if (!numeric && !seen_data && rec.x.empty()) {
            seen_data = true; // header row
            continue;
        }
        seen_data = true;
        if (numeric && fields.size() == 2) {
            throw IoError(ErrorCode::kLengthMismatch,
                          fmt::format("{}:{}: transmitted sample without received sample", path.string(), line_no));
        }
        if (!numeric || fields.size() != 4) {
            throw IoError(ErrorCode::kMalformedRecord,
                          fmt::format("{}:{}: expected 4 numeric columns", path.string(), line_no));
        }
        rec.x.emplace_back(v[0], v[1]);
        rec.y.emplace_back(v[2], v[3]);
    }
    if (rec.x.empty()) throw IoError(ErrorCode::kEmptyInput, path.string() + ": empty input");
    return rec;
}

} // namespace

BasebandRecord ingest_baseband(const std::filesystem::path& path, BasebandFormat format) {
    if (!std::filesystem::exists(path)) throw IoError(ErrorCode::kFileNotFound, "no such file: " + path.string());
    return format == BasebandFormat::kCsv ? read_csv(path) : read_f32(path);
}

void write_baseband(const std::filesystem::path& path, BasebandFormat format, const BasebandRecord& record) {
    if (record.x.size() != record.y.size()) {
        throw IoError(ErrorCode::kLengthMismatch, "write_baseband: x and y lengths differ");
    }
    if (format == BasebandFormat::kCsv) {
        std::ofstream out(path);
        if (!out) throw IoError(ErrorCode::kIo, "cannot write " + path.string());
        out << "re_x,im_x,re_y,im_y\n";
        for (std::size_t i = 0; i < record.x.size(); ++i) {
            out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", record.x[i].real(), record.x[i].imag(),
                               record.y[i].real(), record.y[i].imag());
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(ErrorCode::kIo, "cannot write " + path.string());
    const auto put = [&out](double v) {
        const std::uint32_t raw = to_little_endian(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        out.write(reinterpret_cast<const char*>(&raw), 4);
    };
    for (std::size_t i = 0; i < record.x.size(); ++i) {
        put(record.x[i].real());
        put(record.x[i].imag());
        put(record.y[i].real());
        put(record.y[i].imag());
    }
}

} // namespace spadsp
