// units.hpp - internal unit system and conversions.
//
// Everything inside the library runs in angular frequency units of rad/ps
// with time in ps. Config files may quote system frequencies in GHz
// (ordinary frequency) or cm^-1; both are converted once at parse time.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chirpsim {

inline constexpr double kPi = std::numbers::pi;

// ordinary GHz -> angular rad/ps
inline constexpr double kGhzToRadPerPs = 2.0 * kPi * 1e-3;

// 1 cm^-1 = 29.9792458 GHz (ordinary frequency)
inline constexpr double kWavenumberToGhz = 29.9792458;

// speed of light in cm/ps, used by the chirp-coefficient helper below
inline constexpr double kLightSpeedCmPerPs = 0.0299792458;

enum class FrequencyUnit { RadPerPs, GigaHertz, Wavenumber };

inline FrequencyUnit frequency_unit_from_string(const std::string& tag) {
    if (tag == "rad/ps") return FrequencyUnit::RadPerPs;
    if (tag == "GHz") return FrequencyUnit::GigaHertz;
    if (tag == "cm-1") return FrequencyUnit::Wavenumber;
    throw std::invalid_argument("unknown units tag '" + tag +
                                "' (expected GHz, cm-1 or rad/ps)");
}

inline std::string to_string(FrequencyUnit u) {
    switch (u) {
        case FrequencyUnit::RadPerPs: return "rad/ps";
        case FrequencyUnit::GigaHertz: return "GHz";
        case FrequencyUnit::Wavenumber: return "cm-1";
    }
    return "rad/ps";
}

inline double to_rad_per_ps(double value, FrequencyUnit unit) {
    switch (unit) {
        case FrequencyUnit::RadPerPs: return value;
        case FrequencyUnit::GigaHertz: return value * kGhzToRadPerPs;
        case FrequencyUnit::Wavenumber:
            return value * kWavenumberToGhz * kGhzToRadPerPs;
    }
    return value;
}

// Converts a phase Taylor coefficient quoted in cm^-n (as in pulse-shaper
// literature) to rad/ps^n under the convention t -> c*t with c in cm/ps:
// phi(t) = b[cm^-n] * (c t)^n, so b[rad/ps^n] = b[cm^-n] * c^n.
inline double chirp_coefficient_from_wavenumber(double b_cm, int order) {
    if (order < 0) throw std::invalid_argument("chirp order must be >= 0");
    return b_cm * std::pow(kLightSpeedCmPerPs, order);
}

}  // namespace chirpsim
