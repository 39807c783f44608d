// pulse.hpp - generalized chirped laser pulse.
//
// The pulse is an envelope eps(t) together with a phase written as a
// truncated Taylor series phi(t) = sum_n b_n t^n. Its time derivative
// phidot(t) is the instantaneous frequency sweep that enters the FM-frame
// Hamiltonian as a resonance offset; the N-photon Rabi frequency is
// Omega(t) = (mu_eff * eps(t))^N with hbar = 1.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace chirpsim {

struct ChirpCoefficients {
    // b_0..b_K in rad/ps^n for index n
    std::vector<double> coeffs;

    ChirpCoefficients() : coeffs{0.0} {}
    explicit ChirpCoefficients(std::vector<double> b) : coeffs(std::move(b)) {
        if (coeffs.empty()) coeffs.push_back(0.0);
        validate();
    }

    static ChirpCoefficients single_term(int order, double value) {
        std::vector<double> b(static_cast<std::size_t>(order) + 1, 0.0);
        b[static_cast<std::size_t>(order)] = value;
        return ChirpCoefficients(std::move(b));
    }

    int max_order() const { return static_cast<int>(coeffs.size()) - 1; }

    void validate() const {
        for (double b : coeffs)
            if (!std::isfinite(b))
                throw std::invalid_argument("chirp coefficients must be finite");
    }

    bool operator==(const ChirpCoefficients&) const = default;
};

// phi(t) = sum_n b_n t^n, evaluated by Horner's scheme
inline double phase(double t, const ChirpCoefficients& chirp) {
    const auto& b = chirp.coeffs;
    double acc = 0.0;
    for (std::size_t i = b.size(); i-- > 0;) acc = acc * t + b[i];
    return acc;
}

// phidot(t) = sum_{n>=1} n b_n t^(n-1), Horner on the derivative polynomial
inline double instantaneous_frequency(double t, const ChirpCoefficients& chirp) {
    const auto& b = chirp.coeffs;
    double acc = 0.0;
    for (std::size_t i = b.size(); i-- > 1;)
        acc = acc * t + static_cast<double>(i) * b[i];
    return acc;
}

enum class EnvelopeShape { Gaussian, HyperbolicSecant, Constant };

struct EnvelopeSpec {
    EnvelopeShape shape = EnvelopeShape::Gaussian;
    double peak_amplitude = 0.0;  // mu_eff*eps_peak in rad/ps for N=1
    double fwhm = 1.0;            // FWHM of the INTENSITY profile, ps
    double center = 0.0;          // ps

    void validate() const {
        if (!(peak_amplitude >= 0.0) || !std::isfinite(peak_amplitude))
            throw std::invalid_argument("envelope peak_amplitude must be >= 0");
        if (!(fwhm > 0.0) || !std::isfinite(fwhm))
            throw std::invalid_argument("envelope fwhm must be > 0");
        if (!std::isfinite(center))
            throw std::invalid_argument("envelope center must be finite");
    }

    bool operator==(const EnvelopeSpec&) const = default;
};

// Field amplitude with the intensity-FWHM convention: eps(center +- fwhm/2)
// has eps^2 = peak^2/2. The constant shape is bounded by the simulation
// window of the owning PulseSpec rather than by the envelope itself.
inline double envelope_amplitude(double t, const EnvelopeSpec& env) {
    const double x = t - env.center;
    switch (env.shape) {
        case EnvelopeShape::Gaussian:
            return env.peak_amplitude *
                   std::exp(-2.0 * std::numbers::ln2 * x * x / (env.fwhm * env.fwhm));
        case EnvelopeShape::HyperbolicSecant: {
            // sech(2 ln(1+sqrt2) x / fwhm): eps^2 hits 1/2 at x = +-fwhm/2
            static const double k = 2.0 * std::log(1.0 + std::numbers::sqrt2);
            return env.peak_amplitude / std::cosh(k * x / env.fwhm);
        }
        case EnvelopeShape::Constant:
            return env.peak_amplitude;
    }
    return 0.0;
}

struct PulseSpec {
    EnvelopeSpec envelope;
    ChirpCoefficients chirp;
    int photon_order = 1;  // N
    double start = 0.0;    // simulation window, ps
    double end = 1.0;

    void validate() const {
        envelope.validate();
        chirp.validate();
        if (photon_order < 1)
            throw std::invalid_argument("photon_order must be >= 1");
        if (!(start < end))
            throw std::invalid_argument("pulse window start must precede end");
    }

    bool operator==(const PulseSpec&) const = default;
};

// Omega(t) = (mu_eff * eps(t))^N / hbar with hbar = 1. Real-valued here (the
// FM frame carries the phase), returned as complex for generality.
inline std::complex<double> rabi_frequency(double t, const PulseSpec& pulse,
                                           double mu_eff) {
    const double x = mu_eff * envelope_amplitude(t, pulse.envelope);
    if (pulse.photon_order == 1) return {x, 0.0};
    return {std::pow(x, pulse.photon_order), 0.0};
}

}  // namespace chirpsim
