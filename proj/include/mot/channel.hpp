#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "mot/errors.hpp"
#include "mot/numeric.hpp"

namespace mot {

enum class ModulationScheme { FSK, BPSK, Custom };

// Modulation-dependent constants of the packet-error-rate fit.
struct Modulation {
    ModulationScheme scheme = ModulationScheme::BPSK;
    double c_m = 1.0;
    double k_m = 2.0;

    static Modulation fsk() { return {ModulationScheme::FSK, 0.5, 0.5}; }
    static Modulation bpsk() { return {ModulationScheme::BPSK, 1.0, 2.0}; }
    static Modulation custom(double c, double k) {
        if (!(c > 0.0) || !(k > 0.0))
            throw DomainError("Modulation: c_m and k_m must be positive");
        return {ModulationScheme::Custom, c, k};
    }

    bool operator==(const Modulation&) const = default;
};

inline std::string to_string(ModulationScheme s) {
    switch (s) {
        case ModulationScheme::FSK: return "FSK";
        case ModulationScheme::BPSK: return "BPSK";
        default: return "Custom";
    }
}

// Everything the link model needs: PER fit inputs, truncated-ARQ cap, and
// the free-space link budget.
struct ChannelParams {
    Modulation modulation = Modulation::bpsk();
    int packet_bits = 128;      // n
    int q_max = 8;              // max transmission attempts per packet
    double tx_power_w = 0.1;    // sensor transmit power
    double gain_tx = 1.0;       // sensor antenna gain
    double gain_rx = 1.0;       // collector antenna gain
    double wavelength_m = 0.125;
    double rx_sensitivity_w = 2.5e-9;  // minimum detectable received power
    double noise_power_w = 1e-10;
    double rho_min = 0.99;      // delivery probability required for coverage
    double h_min_m = 10.0;      // collector hover altitude, folded into range

    void validate() const {
        if (!(modulation.c_m > 0.0) || !(modulation.k_m > 0.0))
            throw DomainError("ChannelParams: modulation constants must be positive");
        if (packet_bits < 1) throw DomainError("ChannelParams: packet_bits must be >= 1");
        if (q_max < 1) throw DomainError("ChannelParams: q_max must be >= 1");
        if (!(tx_power_w > 0.0)) throw DomainError("ChannelParams: tx_power_w must be positive");
        if (!(gain_tx > 0.0) || !(gain_rx > 0.0))
            throw DomainError("ChannelParams: antenna gains must be positive");
        if (!(wavelength_m > 0.0)) throw DomainError("ChannelParams: wavelength_m must be positive");
        if (!(rx_sensitivity_w > 0.0))
            throw DomainError("ChannelParams: rx_sensitivity_w must be positive");
        if (!(noise_power_w > 0.0)) throw DomainError("ChannelParams: noise_power_w must be positive");
        if (!(rho_min > 0.0) || !(rho_min <= 1.0))
            throw DomainError("ChannelParams: rho_min must be in (0, 1]");
        if (!(h_min_m >= 0.0)) throw DomainError("ChannelParams: h_min_m must be >= 0");
    }

    bool operator==(const ChannelParams&) const = default;
};

// Two readings of the truncated-retransmission success rate. `Literal` keeps
// the rate as some link-budget treatments print it, 1 - (1 - per)^q_max;
// `Corrected` is the probability that at least one of q_max attempts gets
// through, 1 - per^q_max. Corrected is the default everywhere a scenario is
// built; Literal exists for side-by-side comparison.
enum class SuccessRateConvention { Literal, Corrected };

struct PerCoefficients {
    double a_n = 0.0;
    double b_n = 0.0;
};

// Fit coefficients of the Rayleigh-fading average PER: a_n = ln(n c_m) / k_m,
// b_n = 1 / k_m.
inline PerCoefficients per_coefficients(const Modulation& m, int packet_bits) {
    if (packet_bits < 1) throw DomainError("per_coefficients: packet_bits must be >= 1");
    const double ncm = static_cast<double>(packet_bits) * m.c_m;
    if (ncm < 1.0)
        throw InvalidCoefficientError(
            "per_coefficients: packet_bits * c_m = " + std::to_string(ncm) +
            " < 1 would make a_n negative and the PER fit exceed 1 at high SNR");
    return {std::log(ncm) / m.k_m, 1.0 / m.k_m};
}

// Average packet error rate over Rayleigh fading at mean SNR gamma_bar:
// 1 - exp(-a_n/g) * Gamma(1 + b_n/g), clamped to [0, 1]. The fit leaves
// [0, 1] at very low SNR (the clamp threshold is where
// exp(-a_n/g) * Gamma(1 + b_n/g) crosses 1); evaluated in log space so large
// Gamma arguments cannot overflow.
inline double avg_packet_error_rate(double gamma_bar, const PerCoefficients& c) {
    if (!(gamma_bar > 0.0)) throw DomainError("avg_packet_error_rate: SNR must be positive");
    if (!(c.a_n >= 0.0) || !(c.b_n > 0.0))
        throw DomainError("avg_packet_error_rate: need a_n >= 0 and b_n > 0");
    const double log_term = -c.a_n / gamma_bar + lgamma_fn(1.0 + c.b_n / gamma_bar);
    const double raw = 1.0 - std::exp(log_term);
    return std::clamp(raw, 0.0, 1.0);
}

// Probability a packet is delivered within q_max attempts, under the chosen
// convention.
inline double success_probability(double per, int q_max, SuccessRateConvention conv) {
    if (!(per >= 0.0) || !(per <= 1.0))
        throw DomainError("success_probability: per must be in [0, 1]");
    if (q_max < 1) throw DomainError("success_probability: q_max must be >= 1");
    const double q = static_cast<double>(q_max);
    const double value = conv == SuccessRateConvention::Literal
                             ? 1.0 - std::pow(1.0 - per, q)
                             : 1.0 - std::pow(per, q);
    return std::clamp(value, 0.0, 1.0);
}

// Expected transmissions per delivered packet, the ratio rho / per. The
// ratio is undefined at per == 0; callers treat a zero-PER link as exactly
// one transmission.
inline double expected_retransmissions(double rho, double per) {
    if (!(rho >= 0.0) || !(rho <= 1.0))
        throw DomainError("expected_retransmissions: rho must be in [0, 1]");
    if (!(per > 0.0) || !(per <= 1.0)) {
        if (per == 0.0)
            throw DivisionDomainError(
                "expected_retransmissions: undefined at per = 0; use 1 transmission");
        throw DomainError("expected_retransmissions: per must be in (0, 1]");
    }
    return rho / per;
}

// Free-space received power at the collector.
inline double received_power(const ChannelParams& p, double distance_m) {
    if (!(distance_m > 0.0)) throw DomainError("received_power: distance must be positive");
    const double four_pi = 4.0 * 3.141592653589793238462643383279502884;
    const double lam_over = p.wavelength_m / four_pi;
    return p.gain_tx * p.gain_rx * lam_over * lam_over / (distance_m * distance_m) * p.tx_power_w;
}

// Largest separation at which received power still meets the sensitivity
// threshold; received_power(max_coverage_distance(p)) == rx_sensitivity_w.
inline double max_coverage_distance(const ChannelParams& p) {
    const double four_pi = 4.0 * 3.141592653589793238462643383279502884;
    return p.wavelength_m / four_pi *
           std::sqrt(p.gain_tx * p.gain_rx * p.tx_power_w / p.rx_sensitivity_w);
}

// Mean SNR at the given separation, received power over noise power.
inline double avg_snr(const ChannelParams& p, double distance_m) {
    if (!(p.noise_power_w > 0.0)) throw DomainError("avg_snr: noise power must be positive");
    return received_power(p, distance_m) / p.noise_power_w;
}

}  // namespace mot
