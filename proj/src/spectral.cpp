#include "vfstab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "vfstab/csv.hpp"

namespace vfstab {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || !std::has_single_bit(n)) {
        throw std::invalid_argument("radix-2 FFT needs a power-of-two length");
    }
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                // Twiddles computed directly rather than by recurrence.
                const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(k));
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

Spectrum amplitude_spectrum(std::span<const double> signal, double dt, Window window) {
    if (signal.size() < 64) {
        throw std::invalid_argument("amplitude spectrum needs at least 64 samples");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("sample interval must be positive");
    }
    const std::size_t n = std::bit_floor(signal.size());
    const std::size_t offset = signal.size() - n;
    const auto block = signal.subspan(offset, n);

    double mean = 0.0;
    for (double x : block) mean += x;
    mean /= static_cast<double>(n);

    std::vector<double> w(n, 1.0);
    if (window == Window::kHann) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
        }
    }
    double sum_w = 0.0;
    double sum_w2 = 0.0;
    std::vector<std::complex<double>> data(n);
    for (std::size_t i = 0; i < n; ++i) {
        data[i] = w[i] * (block[i] - mean);
        sum_w += w[i];
        sum_w2 += w[i] * w[i];
    }
    fft_radix2(data);

    Spectrum spec;
    spec.samples_used = n;
    spec.samples_dropped = offset;
    spec.power_scale = sum_w * sum_w / (static_cast<double>(n) * sum_w2);
    const std::size_t half = n / 2;
    spec.freqs.resize(half + 1);
    spec.mags.resize(half + 1);
    const double df = 1.0 / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k <= half; ++k) {
        const double scale = (k == 0 || k == half) ? 1.0 : 2.0;
        spec.freqs[k] = static_cast<double>(k) * df;
        spec.mags[k] = scale * std::abs(data[k]) / sum_w;
    }
    return spec;
}

double spectrum_power(const Spectrum& spec) {
    const std::size_t last = spec.mags.size() - 1;
    double s = spec.mags.front() * spec.mags.front() + spec.mags[last] * spec.mags[last];
    for (std::size_t k = 1; k < last; ++k) {
        s += 0.5 * spec.mags[k] * spec.mags[k];
    }
    return s * spec.power_scale;
}

Peak peak_high_freq(const Spectrum& spec, double f_min) {
    Peak best;
    std::size_t at = 0;
    bool any = false;
    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        if (spec.freqs[k] > f_min && (!any || spec.mags[k] > best.pk)) {
            best = {spec.mags[k], spec.freqs[k], spec.freqs[k]};
            at = k;
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("no spectral bins above f_min");
    }
    if (at > 0 && at + 1 < spec.mags.size() && spec.mags[at - 1] > 0.0 && spec.mags[at + 1] > 0.0 && best.pk > 0.0) {
        const double a = std::log(spec.mags[at - 1]);
        const double b = std::log(spec.mags[at]);
        const double c = std::log(spec.mags[at + 1]);
        const double denom = a - 2.0 * b + c;
        if (denom < 0.0) {
            const double shift = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
            best.f_refined = best.f_peak + shift * (spec.freqs[1] - spec.freqs[0]);
        }
    }
    return best;
}

namespace {

std::span<const double> detection_window(const SimTrace& trace, const DetectionSettings& settings) {
    if (!(settings.keep_fraction > 0.0 && settings.keep_fraction <= 1.0)) {
        throw std::invalid_argument("detection keep_fraction must lie in (0, 1]");
    }
    const std::size_t n = trace.F_tau.size();
    const auto keep = static_cast<std::size_t>(std::floor(static_cast<double>(n) * settings.keep_fraction));
    return {trace.F_tau.data() + (n - keep), keep};
}

}  // namespace

Spectrum detection_spectrum(const SimTrace& trace, const DetectionSettings& settings) {
    return amplitude_spectrum(detection_window(trace, settings), trace.dt, Window::kHann);
}

Detection analyze_oscillation(const SimTrace& trace, const DetectionSettings& settings) {
    const std::span<const double> window = detection_window(trace, settings);

    Detection out;
    out.peak = peak_high_freq(amplitude_spectrum(window, trace.dt, Window::kHann), settings.f_min);
    if (settings.threshold >= 0.0) {
        out.threshold = settings.threshold;
    } else {
        double max_abs = 0.0;
        for (double f : window) max_abs = std::max(max_abs, std::abs(f));
        out.threshold = settings.relative_threshold * max_abs;
    }
    out.detected = out.peak.pk > out.threshold;
    return out;
}

bool oscillation_detected(const SimTrace& trace, const DetectionSettings& settings) {
    return analyze_oscillation(trace, settings).detected;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spec) {
    os << "freq_hz,amplitude\n";
    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        os << format_number(spec.freqs[k]) << ',' << format_number(spec.mags[k]) << '\n';
    }
}

}  // namespace vfstab
