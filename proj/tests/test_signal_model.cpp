#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scratch_dir.hpp"
#include "spadsp/error.hpp"
#include "spadsp/signal_model.hpp"

using namespace spadsp;
namespace fs = std::filesystem;

TEST(PaperChannel, TapsAndEnergy) {
    const auto ch = make_paper_channel();
    ASSERT_EQ(ch.length(), 64u);
    EXPECT_EQ(ch.taps[31], Complex(0.3536, 0.3536));
    EXPECT_EQ(ch.taps[5], Complex{});
    EXPECT_EQ(ch.true_support.indices(), (std::vector<std::size_t>{0, 31, 32, 63}));
    EXPECT_EQ(ch.taps.count_nonzero(), 4u);
    EXPECT_NEAR(ch.taps.squared_norm(), 1.00028, 1e-4);
}

TEST(MakeChannel, RejectsZeroEnergy) {
    EXPECT_THROW(make_channel(ComplexVector(8)), ParameterError);
    EXPECT_THROW(make_channel(ComplexVector{Complex(INFINITY, 0), 1}), ParameterError);
    const auto ch = make_channel(ComplexVector{0, {1, 1}, 0, 2});
    EXPECT_EQ(ch.true_support.indices(), (std::vector<std::size_t>{1, 3}));
}

TEST(RandomChannel, SupportAndUnitEnergy) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ch = make_random_channel(64, 4, seed);
        EXPECT_EQ(ch.true_support.size(), 4u);
        EXPECT_NEAR(ch.taps.squared_norm(), 1.0, 1e-12);
        for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(ch.taps[i] != Complex{}, ch.true_support.contains(i));
    }
    EXPECT_EQ(make_random_channel(64, 4, 3).taps, make_random_channel(64, 4, 3).taps);
    EXPECT_THROW(make_random_channel(8, 9, 1), ParameterError);
    EXPECT_THROW(make_random_channel(8, 0, 1), ParameterError);
}

TEST(Noise, VarianceFromSnr) {
    EXPECT_NEAR(noise_variance_from_snr(20, 1.0), 0.01, 1e-15);
    EXPECT_NEAR(noise_variance_from_snr(0, 1.0), 1.0, 1e-15);
    EXPECT_NEAR(noise_variance_from_snr(10, 2.0), 0.2, 1e-15);
    EXPECT_THROW(noise_variance_from_snr(10, 0.0), ParameterError);
    EXPECT_THROW(noise_variance_from_snr(10, -1.0), ParameterError);
    double prev = INFINITY;
    for (double snr = -10; snr <= 40; snr += 2.5) {
        const double v = noise_variance_from_snr(snr, 1.3);
        EXPECT_LT(v, prev);
        prev = v;
    }
    const auto ch = make_paper_channel();
    const auto spec = make_noise_spec(20, ch);
    EXPECT_DOUBLE_EQ(spec.variance, ch.taps.squared_norm() * 0.01);
}

TEST(Input, MomentsAndWhiteness) {
    constexpr std::size_t n = 1'000'000;
    const auto x = generate_input(n, 42);
    Complex mean{};
    double power = 0.0;
    for (const auto& c : x.entries()) {
        mean += c;
        power += std::norm(c);
    }
    mean /= static_cast<double>(n);
    power /= static_cast<double>(n);
    EXPECT_NEAR(mean.real(), 0.0, 0.01);
    EXPECT_NEAR(mean.imag(), 0.0, 0.01);
    EXPECT_NEAR(power, 1.0, 0.02);
    for (std::size_t lag = 1; lag <= 8; ++lag) {
        Complex acc{};
        for (std::size_t i = lag; i < n; ++i) acc += x.entries()[i] * std::conj(x.entries()[i - lag]);
        EXPECT_LT(std::abs(acc) / static_cast<double>(n - lag), 0.01) << "lag " << lag;
    }
}

TEST(Input, CircularSplit) {
    const auto x = generate_input(200'000, 7);
    double re = 0, im = 0, cross = 0;
    for (const auto& c : x.entries()) {
        re += c.real() * c.real();
        im += c.imag() * c.imag();
        cross += c.real() * c.imag();
    }
    const double n = 200'000.0;
    EXPECT_NEAR(re / n, 0.5, 0.01);
    EXPECT_NEAR(im / n, 0.5, 0.01);
    EXPECT_NEAR(cross / n, 0.0, 0.01);
}

TEST(Input, DeterministicAndSeedSensitive) {
    EXPECT_EQ(generate_input(1000, 5), generate_input(1000, 5));
    EXPECT_NE(generate_input(1000, 5), generate_input(1000, 6));
    // noise stream differs from the input stream for the same seed
    EXPECT_NE(generate_input(100, 5), generate_noise(100, 1.0, 5));
    EXPECT_THROW(generate_input(0, 1), ParameterError);
}

TEST(Noise, GeneratedVariance) {
    const auto q = generate_noise(400'000, 0.01, 3);
    double p = 0;
    for (const auto& c : q.entries()) p += std::norm(c);
    EXPECT_NEAR(p / 400'000.0, 0.01, 0.0003);
    EXPECT_EQ(generate_noise(10, 0.0, 3).count_nonzero(), 0u);
}

TEST(Phase, Trajectories) {
    EXPECT_EQ(PhaseTrajectory::zero().at(12345), 0.0);
    const auto ramp = PhaseTrajectory::ramp(0.1);
    EXPECT_NEAR(ramp.at(5), 0.5, 1e-15);
    for (std::int64_t n = 0; n < 500; ++n) {
        const double t = ramp.at(n);
        EXPECT_GT(t, -std::numbers::pi);
        EXPECT_LE(t, std::numbers::pi);
        EXPECT_NEAR(std::remainder(t - 0.1 * static_cast<double>(n), 2 * std::numbers::pi), 0.0, 1e-9);
    }
    EXPECT_DOUBLE_EQ(wrap_phase(-std::numbers::pi), std::numbers::pi);
}

TEST(TapDelayLine, NewestFirstZeroPadded) {
    TapDelayLine line(3);
    EXPECT_EQ(line.push(1), (ComplexVector{1, 0, 0}));
    EXPECT_EQ(line.push(2), (ComplexVector{2, 1, 0}));
    EXPECT_EQ(line.push(3), (ComplexVector{3, 2, 1}));
    EXPECT_EQ(line.push(4), (ComplexVector{4, 3, 2}));
    line.reset();
    EXPECT_EQ(line.window().count_nonzero(), 0u);
}

TEST(EmitReceived, Examples) {
    auto impulse = make_channel(ComplexVector{1, 0, 0, 0});
    const Complex c{0.3, -0.7};
    EXPECT_EQ(emit_received(impulse, ComplexVector{c, 2, 3, 4}, 0.0, 0.0), c);
    const Complex flipped = emit_received(impulse, ComplexVector{1, 0, 0, 0}, std::numbers::pi, 0.0);
    EXPECT_NEAR(flipped.real(), -1.0, 1e-15);
    EXPECT_NEAR(flipped.imag(), 0.0, 1e-15);
    EXPECT_EQ(emit_received(impulse, ComplexVector{0, 0, 0, 0}, 0.0, {0.5, 0.5}), Complex(0.5, 0.5));
    EXPECT_THROW(emit_received(impulse, ComplexVector{1, 2, 3}, 0.0, 0.0), ParameterError);
}

TEST(EmitReceived, MatchesConvolutionOracle) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ch = make_random_channel(16, 5, seed);
        const auto xs = spadsp::testing::random_complex(100, seed + 10);
        const double theta = 0.37 * static_cast<double>(seed);
        TapDelayLine line(16);
        for (std::size_t n = 0; n < xs.size(); ++n) {
            const auto& w = line.push(xs[n]);
            const Complex want = spadsp::testing::convolution_sum(ch.taps.entries(), xs, n, theta);
            const Complex got = emit_received(ch, w, theta, 0.0);
            EXPECT_LE(std::abs(got - want), 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(SimulateReceived, NoiselessZeroPhaseIsConvolution) {
    const auto ch = make_paper_channel();
    const auto x = generate_input(300, 11);
    const std::vector<Complex> noise(300);
    const auto y = simulate_received(ch, x.span(), PhaseTrajectory::zero(), noise);
    ASSERT_EQ(y.size(), 300u);
    for (std::size_t n = 0; n < 300; ++n) {
        const Complex want = spadsp::testing::convolution_sum(ch.taps.entries(), x.entries(), n, 0.0);
        EXPECT_LE(std::abs(y[n] - want), 1e-12 * std::max(1.0, std::abs(want)));
    }
    EXPECT_THROW(simulate_received(ch, x.span(), PhaseTrajectory::zero(), std::vector<Complex>(10)), ParameterError);
}

class Baseband : public ::testing::Test {
protected:
    spadsp::testing::ScratchDir dir;

    fs::path write(const std::string& name, const std::string& text) {
        const auto p = dir.path() / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
};

TEST_F(Baseband, CsvRows) {
    const auto p = write("a.csv", "1.0,0.0,0.5,0.5\n1.0,0.0,0.5,0.5\n");
    const auto rec = ingest_baseband(p, BasebandFormat::kCsv);
    ASSERT_EQ(rec.x.size(), 2u);
    EXPECT_EQ(rec.x[0], Complex(1.0, 0.0));
    EXPECT_EQ(rec.y[1], Complex(0.5, 0.5));
}

TEST_F(Baseband, CsvHeaderOptional) {
    const auto p = write("h.csv", "re_x,im_x,re_y,im_y\n1,2,3,4\n");
    const auto rec = ingest_baseband(p, BasebandFormat::kCsv);
    ASSERT_EQ(rec.x.size(), 1u);
    EXPECT_EQ(rec.y[0], Complex(3, 4));
}

TEST_F(Baseband, ErrorCodes) {
    const auto code_of = [](const fs::path& p, BasebandFormat f) {
        try {
            ingest_baseband(p, f);
        } catch (const IoError& e) {
            return e.code();
        }
        return ErrorCode::kParameter;
    };
    EXPECT_EQ(code_of(dir.path() / "missing.csv", BasebandFormat::kCsv), ErrorCode::kFileNotFound);
    EXPECT_EQ(code_of(write("e.csv", ""), BasebandFormat::kCsv), ErrorCode::kEmptyInput);
    EXPECT_EQ(code_of(write("e.f32", ""), BasebandFormat::kInterleavedF32), ErrorCode::kEmptyInput);
    EXPECT_EQ(code_of(write("m.csv", "1,2,3,4\n1,2,x,4\n"), BasebandFormat::kCsv), ErrorCode::kMalformedRecord);
    EXPECT_EQ(code_of(write("s.csv", "1,2,3,4\n1,2\n"), BasebandFormat::kCsv), ErrorCode::kLengthMismatch);
    EXPECT_EQ(code_of(write("odd.f32", std::string(6, '\0')), BasebandFormat::kInterleavedF32),
              ErrorCode::kMalformedRecord);
    EXPECT_EQ(code_of(write("short.f32", std::string(8, '\0')), BasebandFormat::kInterleavedF32),
              ErrorCode::kLengthMismatch);
}

TEST_F(Baseband, RoundTripBitIdentical) {
    // values representable in float32 so both formats round-trip exactly
    BasebandRecord rec;
    for (const auto& c : spadsp::testing::random_complex(257, 4)) {
        rec.x.emplace_back(static_cast<float>(c.real()), static_cast<float>(c.imag()));
        rec.y.emplace_back(static_cast<float>(c.imag() * 3), static_cast<float>(-c.real() / 7));
    }
    for (auto f : {BasebandFormat::kCsv, BasebandFormat::kInterleavedF32}) {
        const auto p = dir.path() / (f == BasebandFormat::kCsv ? "rt.csv" : "rt.f32");
        write_baseband(p, f, rec);
        const auto back = ingest_baseband(p, f);
        ASSERT_EQ(back.x.size(), rec.x.size());
        for (std::size_t i = 0; i < rec.x.size(); ++i) {
            EXPECT_EQ(std::bit_cast<std::uint64_t>(back.x[i].real()), std::bit_cast<std::uint64_t>(rec.x[i].real()));
            EXPECT_EQ(std::bit_cast<std::uint64_t>(back.y[i].imag()), std::bit_cast<std::uint64_t>(rec.y[i].imag()));
            EXPECT_EQ(back.x[i], rec.x[i]);
            EXPECT_EQ(back.y[i], rec.y[i]);
        }
    }
}

TEST_F(Baseband, CsvRoundTripFullDoublePrecision) {
    BasebandRecord rec;
    for (const auto& c : spadsp::testing::random_complex(100, 8)) {
        rec.x.push_back(c);
        rec.y.push_back(c * Complex(0.1, 0.9));
    }
    const auto p = dir.path() / "d.csv";
    write_baseband(p, BasebandFormat::kCsv, rec);
    const auto back = ingest_baseband(p, BasebandFormat::kCsv);
    EXPECT_EQ(back.x, rec.x);
    EXPECT_EQ(back.y, rec.y);
}

TEST(BasebandFormatName, Parse) {
    EXPECT_EQ(parse_baseband_format("csv"), BasebandFormat::kCsv);
    EXPECT_EQ(parse_baseband_format("interleaved-f32"), BasebandFormat::kInterleavedF32);
    EXPECT_THROW(parse_baseband_format("wav"), ParameterError);
}
