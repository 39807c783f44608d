// spectrum.hpp - quantum-beat spectra of population traces.
//
// Estimation chain: select the post-pulse window, detrend (subtract the
// mean), apply a Hann window, zero-pad x4, radix-2 FFT, then extract local
// maxima above 5% of the peak power with quadratic interpolation around
// each maximum. Beats in the targeted spectra are few and well separated,
// so this simple chain is sufficient.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chirpsim/analysis.hpp"
#include "chirpsim/units.hpp"

namespace chirpsim {

// In-place iterative radix-2 Cooley-Tukey; size must be a power of two.
inline void fft_radix2(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

struct BeatPeak {
    double frequency = 0.0;  // rad/ps (angular)
    double power = 0.0;
};

struct BeatSpectrum {
    std::vector<double> frequencies;  // rad/ps grid, [0, pi/dt)
    std::vector<double> power;        // nonnegative
    std::vector<BeatPeak> peaks;
};

inline BeatSpectrum beat_spectrum(const PopulationSeries& series, int level,
                                  std::optional<std::pair<double, double>> window =
                                      std::nullopt) {
    if (level < 0 || level >= series.levels())
        throw std::invalid_argument("beat_spectrum: level out of range");

    const double wa = window ? window->first : series.times.front();
    const double wb = window ? window->second : series.times.back();

    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < wa - 1e-12 || t > wb + 1e-12) continue;
        ts.push_back(t);
        ys.push_back(series.populations(i, level));
    }
    if (ts.size() < 16)
        throw std::invalid_argument("beat_spectrum: fewer than 16 samples in window");

    // resample onto a uniform grid if the stored one is not
    const double dt0 = ts[1] - ts[0];
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < ts.size(); ++i)
        if (std::abs((ts[i + 1] - ts[i]) - dt0) > 1e-9 * std::max(1.0, dt0)) {
            uniform = false;
            break;
        }
    if (!uniform) {
        const std::size_t n = ts.size();
        const double a = ts.front(), b = ts.back();
        std::vector<double> yu(n);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = a + (b - a) * static_cast<double>(i) /
                                     static_cast<double>(n - 1);
            while (k + 2 < n && ts[k + 1] < t) ++k;
            const double f = (t - ts[k]) / (ts[k + 1] - ts[k]);
            yu[i] = ys[k] + f * (ys[k + 1] - ys[k]);
        }
        ys = std::move(yu);
    }
    const double dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);

    // detrend + Hann window
    double mean = 0.0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    const std::size_t n = ys.size();
    std::size_t nfft = 1;
    while (nfft < 4 * n) nfft <<= 1;
    std::vector<std::complex<double>> buf(nfft, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double hann =
            0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
        buf[i] = (ys[i] - mean) * hann;
    }
    fft_radix2(buf);

    BeatSpectrum spec;
    const std::size_t nhalf = nfft / 2;
    const double dw = 2.0 * kPi / (static_cast<double>(nfft) * dt);
    spec.frequencies.resize(nhalf);
    spec.power.resize(nhalf);
    for (std::size_t i = 0; i < nhalf; ++i) {
        spec.frequencies[i] = dw * static_cast<double>(i);
        spec.power[i] = std::norm(buf[i]);
    }

    // local maxima above 5% of peak power, refined by quadratic interpolation
    const double floor =
        0.05 * *std::max_element(spec.power.begin(), spec.power.end());
    for (std::size_t i = 1; i + 1 < nhalf; ++i) {
        const double p = spec.power[i];
        if (p <= floor) continue;
        if (!(p > spec.power[i - 1] && p >= spec.power[i + 1])) continue;
        const double denom =
            spec.power[i - 1] - 2.0 * p + spec.power[i + 1];
        const double shift =
            denom != 0.0 ? 0.5 * (spec.power[i - 1] - spec.power[i + 1]) / denom
                         : 0.0;
        spec.peaks.push_back({spec.frequencies[i] + shift * dw, p});
    }
    return spec;
}

}  // namespace chirpsim
