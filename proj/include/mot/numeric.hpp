#pragma once

#include <cmath>
#include <limits>

#include "mot/errors.hpp"

namespace mot {

namespace detail {

// Lanczos approximation, g = 7, 9 terms. Relative error is below 1e-13 for
// positive arguments, comfortably past the 10 significant digits the channel
// model needs. Kept in-library (instead of std::tgamma) so results are
// bit-stable across standard libraries.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline double lanczos_series(double z) {
    double acc = kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i) acc += kLanczosCoeff[i] / (z + static_cast<double>(i) - 1.0);
    return acc;
}

}  // namespace detail

// Gamma function for x > 0.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    if (x < 0.5) {
        // reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
        const double pi = 3.141592653589793238462643383279502884;
        return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + detail::kLanczosG + 0.5;
    const double sqrt_two_pi = 2.506628274631000502415765284811045253;
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * detail::lanczos_series(z + 1.0);
}

// log(Gamma(x)) for x > 0; stays finite where gamma_fn would overflow.
inline double lgamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("lgamma_fn: argument must be positive");
    if (x < 0.5) {
        const double pi = 3.141592653589793238462643383279502884;
        return std::log(pi / std::sin(pi * x)) - lgamma_fn(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + detail::kLanczosG + 0.5;
    const double log_sqrt_two_pi = 0.91893853320467274178032973640561764;
    return log_sqrt_two_pi + (z + 0.5) * std::log(t) - t + std::log(detail::lanczos_series(z + 1.0));
}

// |a - b| within `rel` of the larger magnitude (floor 1.0).
inline bool nearly_equal(double a, double b, double rel) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= rel * scale;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace mot
