#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vfstab/spectral.hpp"

using namespace vfstab;

TEST_CASE("radix-2 FFT equals the direct DFT") {
    std::mt19937 rng(2);
    std::normal_distribution<double> g;
    for (std::size_t n : {1u, 2u, 8u, 64u, 256u}) {
        std::vector<std::complex<double>> x(n);
        for (auto& v : x) v = {g(rng), g(rng)};
        const auto ref = oracle::naive_dft(x);
        fft_radix2(x);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(x[k] - ref[k]) < 1e-9 * std::sqrt(static_cast<double>(n)));
    }
    std::vector<std::complex<double>> bad(12);
    CHECK_THROWS_AS(fft_radix2(bad), std::invalid_argument);
}

TEST_CASE("Parseval holds for both windows") {
    std::mt19937 rng(4);
    std::normal_distribution<double> g;
    std::vector<double> x(3000);  // truncated to 2048
    for (double& v : x) v = g(rng) + 0.3;
    for (Window w : {Window::kRect, Window::kHann}) {
        const Spectrum s = amplitude_spectrum(x, 1e-3, w);
        REQUIRE(s.samples_used == 2048);
        CHECK(s.samples_dropped == 952);
        // Direct time-domain reference on the same block.
        const std::size_t n = s.samples_used;
        const std::size_t off = x.size() - n;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x[off + i];
        mean /= static_cast<double>(n);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double wi = w == Window::kRect ? 1.0 : 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
            num += std::pow(wi * (x[off + i] - mean), 2);
            den += wi * wi;
        }
        CHECK(std::abs(spectrum_power(s) - num / den) <= 1e-6 * num / den);
    }
}

TEST_CASE("sinusoid amplitude and frequency are recovered") {
    const double dt = 1e-3;
    const std::size_t n = 4096;
    const double df = 1.0 / (n * dt);
    for (double f : {40.0 * df, 40.3 * df, 101.5 * df}) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = 0.7 * std::sin(2.0 * M_PI * f * i * dt) + 2.0;
        const Spectrum s = amplitude_spectrum(x, dt, Window::kHann);
        const Peak p = peak_high_freq(s, 1.0);
        CHECK(std::abs(p.f_refined - f) < 0.05 * df);
        if (std::abs(f / df - std::round(f / df)) < 1e-9) CHECK(p.pk == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(p.pk > 0.7 * 0.84);  // Hann scalloping loss is at most 1.42 dB
    }
}

TEST_CASE("peak search is strictly above f_min") {
    Spectrum s;
    s.freqs = {0.0, 1.0, 2.0, 3.0, 4.0};
    s.mags = {0.0, 5.0, 4.0, 1.0, 0.5};
    CHECK(peak_high_freq(s, 2.0).f_peak == 3.0);
    CHECK(peak_high_freq(s, 1.5).f_peak == 2.0);
    CHECK_THROWS_AS(peak_high_freq(s, 4.0), std::invalid_argument);
}

TEST_CASE("short signals are refused") {
    std::vector<double> x(63, 1.0);
    CHECK_THROWS_AS(amplitude_spectrum(x, 1e-3), std::invalid_argument);
}

TEST_CASE("oscillation detection on synthetic traces") {
    SimTrace tr;
    tr.dt = 5e-4;
    for (int i = 0; i <= 40000; ++i) {
        const double t = i * tr.dt;
        tr.t.push_back(t);
        tr.F_tau.push_back(0.2 + 0.05 * std::sin(2.0 * M_PI * 3.2 * t));
    }
    const Detection hit = analyze_oscillation(tr);
    CHECK(hit.detected);
    CHECK(hit.peak.f_refined == doctest::Approx(3.2).epsilon(0.01));
    CHECK(hit.threshold == doctest::Approx(0.05 * 0.25).epsilon(1e-3));

    for (std::size_t i = 0; i < tr.F_tau.size(); ++i) tr.F_tau[i] = 0.2 + 0.05 * std::sin(2.0 * M_PI * 1.0 * tr.t[i]);
    CHECK_FALSE(oscillation_detected(tr));  // below f_min

    DetectionSettings absolute;
    absolute.threshold = 1.0;
    for (std::size_t i = 0; i < tr.F_tau.size(); ++i) tr.F_tau[i] = 0.2 + 0.05 * std::sin(2.0 * M_PI * 5.0 * tr.t[i]);
    CHECK_FALSE(oscillation_detected(tr, absolute));
    CHECK(oscillation_detected(tr));
}
