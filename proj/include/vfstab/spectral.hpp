#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "vfstab/simloop.hpp"

namespace vfstab {

enum class Window { kRect, kHann };

struct Spectrum {
    std::vector<double> freqs;  // [Hz], 0 .. Nyquist
    std::vector<double> mags;   // single-sided amplitude, coherent-gain corrected
    std::size_t samples_used = 0;     // power-of-two length actually transformed
    std::size_t samples_dropped = 0;  // leading samples discarded by truncation
    double power_scale = 1.0;         // (sum w)^2 / (N sum w^2)
};

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data);

/// Mean-detrended, windowed amplitude spectrum of the trailing power-of-two
/// block of `signal`. Throws std::invalid_argument for fewer than 64 samples.
Spectrum amplitude_spectrum(std::span<const double> signal, double dt, Window window = Window::kHann);

/// Power of the windowed, detrended block reconstructed from the amplitudes:
/// sum (w x)^2 / sum w^2 (mean square for the rectangular window).
double spectrum_power(const Spectrum& spec);

struct Peak {
    double pk = 0.0;         // amplitude [signal units]
    double f_peak = 0.0;     // bin frequency [Hz]
    double f_refined = 0.0;  // parabolic interpolation of log amplitude [Hz]
};

/// Largest amplitude over bins strictly above f_min.
Peak peak_high_freq(const Spectrum& spec, double f_min = 2.0);

struct DetectionSettings {
    double f_min = 2.0;
    double keep_fraction = 0.5;        // trailing part of the trace analyzed
    double threshold = -1.0;           // absolute [N]; negative selects the relative rule
    double relative_threshold = 0.05;  // fraction of max |F_tau| over the analyzed window
};

struct Detection {
    bool detected = false;
    Peak peak;
    double threshold = 0.0;
};

/// Hann amplitude spectrum of F_tau over the trailing keep_fraction window.
Spectrum detection_spectrum(const SimTrace& trace, const DetectionSettings& settings = {});

/// Pk of F_tau over the trailing window, compared against the threshold.
Detection analyze_oscillation(const SimTrace& trace, const DetectionSettings& settings = {});

bool oscillation_detected(const SimTrace& trace, const DetectionSettings& settings = {});

void write_spectrum_csv(std::ostream& os, const Spectrum& spec);

}  // namespace vfstab
