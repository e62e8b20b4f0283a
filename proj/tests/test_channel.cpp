#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mot/mot.hpp"

using namespace mot;

namespace {

// 1 - exp(-a/g) * Gamma(1 + b/g) before the libray's [0,1] clamp
double raw_per(double gamma_bar, const PerCoefficients& c) {
    return 1.0 - std::exp(-c.a_n / gamma_bar + lgamma_fn(1.0 + c.b_n / gamma_bar));
}

}  // namespace

TEST_CASE("gamma_fn matches the standard library", "[channel]") {
    const double grid[] = {0.1, 0.25, 0.49, 0.5,  0.75, 1.0,  1.02, 1.05,
                           1.5, 2.0,  2.5,  3.0,  5.0,  10.0, 50.0, 170.0};
    for (double x : grid) {
        CAPTURE(x);
        CHECK(nearly_equal(gamma_fn(x), std::tgamma(x), 1e-10));
    }
    CHECK(gamma_fn(1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == Catch::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
}

TEST_CASE("lgamma_fn stays finite past gamma_fn overflow", "[channel]") {
    for (double x : {0.2, 0.7, 1.0, 1.5, 3.0, 20.0, 200.0, 5000.0}) {
        CAPTURE(x);
        CHECK(nearly_equal(lgamma_fn(x), std::lgamma(x), 1e-10));
    }
    CHECK(std::isfinite(lgamma_fn(1e4)));
}

TEST_CASE("per_coefficients by modulation", "[channel]") {
    const PerCoefficients bpsk1 = per_coefficients(Modulation::bpsk(), 1);
    CHECK(bpsk1.a_n == 0.0);
    CHECK(bpsk1.b_n == 0.5);

    const PerCoefficients bpsk128 = per_coefficients(Modulation::bpsk(), 128);
    CHECK(bpsk128.a_n == Catch::Approx(2.4260).margin(5e-5));
    CHECK(bpsk128.a_n == std::log(128.0) / 2.0);
    CHECK(bpsk128.b_n == 0.5);

    const PerCoefficients fsk2 = per_coefficients(Modulation::fsk(), 2);
    CHECK(fsk2.a_n == 0.0);
    CHECK(fsk2.b_n == 2.0);

    // n * c_m < 1 would push the fit above 1 at high SNR
    CHECK_THROWS_AS(per_coefficients(Modulation::fsk(), 1), InvalidCoefficientError);
    CHECK_THROWS_AS(per_coefficients(Modulation::bpsk(), 0), DomainError);
    CHECK_THROWS_AS(Modulation::custom(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(Modulation::custom(1.0, -2.0), DomainError);
}

TEST_CASE("avg_packet_error_rate values", "[channel]") {
    const PerCoefficients flat{0.0, 0.5};
    CHECK(avg_packet_error_rate(1e12, flat) < 1e-9);

    const PerCoefficients c{2.4260, 0.5};
    const double expected = 1.0 - std::exp(-0.2426) * std::tgamma(1.05);
    const double got = avg_packet_error_rate(10.0, c);
    CHECK(got > 0.0);
    CHECK(got < 1.0);
    CHECK(nearly_equal(got, expected, 1e-10));

    CHECK(avg_packet_error_rate(5.0, c) > avg_packet_error_rate(50.0, c));
    CHECK_THROWS_AS(avg_packet_error_rate(0.0, c), DomainError);
    CHECK_THROWS_AS(avg_packet_error_rate(-1.0, c), DomainError);
    CHECK_THROWS_AS(avg_packet_error_rate(1.0, PerCoefficients{-0.1, 0.5}), DomainError);
    CHECK_THROWS_AS(avg_packet_error_rate(1.0, PerCoefficients{1.0, 0.0}), DomainError);
}

TEST_CASE("avg_packet_error_rate monotone on the SNR grid", "[channel]") {
    const PerCoefficients c = per_coefficients(Modulation::bpsk(), 128);
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
        const double g = 0.1 * std::pow(1e7 / 0.1, i / 400.0);
        const double per = avg_packet_error_rate(g, c);
        CHECK(per <= prev + 1e-15);
        CHECK(per >= 0.0);
        CHECK(per <= 1.0);
        prev = per;
    }
}

TEST_CASE("avg_packet_error_rate clamp threshold", "[channel]") {
    const PerCoefficients c = per_coefficients(Modulation::bpsk(), 128);

    // the raw fit drops below 0 only at very low SNR; bisect the crossing
    double lo = 1e-6, hi = 1.0;
    REQUIRE(raw_per(lo, c) < 0.0);
    REQUIRE(raw_per(hi, c) > 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        (raw_per(mid, c) < 0.0 ? lo : hi) = mid;
    }
    const double threshold = hi;
    CHECK(threshold < 0.01);

    std::mt19937_64 rng(3);
    int clamped = 0;
    for (int i = 0; i < 10000; ++i) {
        const double g = 1e-4 * std::pow(1e10, unit_real(rng));
        const bool active = raw_per(g, c) < 0.0;
        if (active) {
            ++clamped;
            CHECK(avg_packet_error_rate(g, c) == 0.0);
            CHECK(g < threshold * 1.0001);
        } else {
            CHECK(g > threshold * 0.9999);
        }
    }
    INFO("clamp activation rate: " << clamped / 10000.0 << ", threshold " << threshold);
    CHECK(clamped > 0);
    CHECK(clamped < 5000);
}

TEST_CASE("success_probability conventions", "[channel]") {
    CHECK(success_probability(0.0, 5, SuccessRateConvention::Corrected) == 1.0);
    CHECK(success_probability(1.0, 5, SuccessRateConvention::Corrected) == 0.0);
    CHECK(success_probability(0.1, 3, SuccessRateConvention::Literal) ==
          Catch::Approx(0.271).epsilon(1e-12));
    CHECK(success_probability(0.1, 3, SuccessRateConvention::Corrected) ==
          Catch::Approx(0.999).epsilon(1e-12));

    for (double per : {0.0, 0.05, 0.3, 0.77, 1.0}) {
        CHECK(success_probability(per, 1, SuccessRateConvention::Literal) ==
              Catch::Approx(per).margin(1e-15));
        CHECK(success_probability(per, 1, SuccessRateConvention::Corrected) ==
              Catch::Approx(1.0 - per).margin(1e-15));
    }

    for (double per : {0.1, 0.5, 0.9}) {
        double prev = 0.0;
        for (int q = 1; q <= 10; ++q) {
            const double rho = success_probability(per, q, SuccessRateConvention::Corrected);
            CHECK(rho >= prev);
            prev = rho;
        }
    }

    CHECK_THROWS_AS(success_probability(-0.1, 1, SuccessRateConvention::Corrected), DomainError);
    CHECK_THROWS_AS(success_probability(1.1, 1, SuccessRateConvention::Corrected), DomainError);
    CHECK_THROWS_AS(success_probability(0.5, 0, SuccessRateConvention::Corrected), DomainError);
}

TEST_CASE("success_probability matches a truncated-ARQ simulation", "[channel]") {
    std::mt19937_64 rng(99);
    const int episodes = 1000000;
    for (double per : {0.1, 0.5, 0.9}) {
        for (int q : {1, 3, 8}) {
            int delivered = 0;
            for (int e = 0; e < episodes; ++e) {
                for (int attempt = 0; attempt < q; ++attempt) {
                    if (unit_real(rng) >= per) {
                        ++delivered;
                        break;
                    }
                }
            }
            const double p = success_probability(per, q, SuccessRateConvention::Corrected);
            const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / episodes);
            CAPTURE(per, q, p, delivered);
            CHECK(std::fabs(static_cast<double>(delivered) / episodes - p) <= 3.0 * se);
        }
    }
}

TEST_CASE("expected_retransmissions ratio", "[channel]") {
    const double rho0 = success_probability(1.0, 3, SuccessRateConvention::Corrected);
    CHECK(expected_retransmissions(rho0, 1.0) == 0.0);

    const double rho1 = success_probability(0.5, 1, SuccessRateConvention::Corrected);
    CHECK(expected_retransmissions(rho1, 0.5) == 1.0);

    CHECK_THROWS_AS(expected_retransmissions(0.5, 0.0), DivisionDomainError);
    CHECK_THROWS_AS(expected_retransmissions(0.5, 1.5), DomainError);
    CHECK_THROWS_AS(expected_retransmissions(-0.1, 0.5), DomainError);
}

TEST_CASE("received_power inverse square", "[channel]") {
    ChannelParams p;
    p.gain_tx = 1.0;
    p.gain_rx = 1.0;
    p.wavelength_m = 4.0 * 3.141592653589793238462643383279502884;
    p.tx_power_w = 1.0;
    CHECK(received_power(p, 1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(received_power(p, 2.0) == Catch::Approx(0.25).epsilon(1e-14));
    p.tx_power_w = 2.0;
    CHECK(received_power(p, 1.0) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(received_power(p, 0.0), DomainError);
    CHECK_THROWS_AS(received_power(p, -3.0), DomainError);

    const ChannelParams defaults;
    const double k = received_power(defaults, 1.0);
    for (double d : {0.5, 2.0, 10.0, 123.0, 4096.0}) {
        CHECK(nearly_equal(received_power(defaults, d) * d * d, k, 1e-12));
    }
}

TEST_CASE("max_coverage_distance link budget", "[channel]") {
    ChannelParams p;
    p.gain_tx = 1.0;
    p.gain_rx = 1.0;
    p.wavelength_m = 4.0 * 3.141592653589793238462643383279502884;
    p.tx_power_w = 1.0;
    p.rx_sensitivity_w = 1.0;
    CHECK(max_coverage_distance(p) == Catch::Approx(1.0).epsilon(1e-14));

    const double base = max_coverage_distance(p);
    p.tx_power_w = 4.0;
    CHECK(max_coverage_distance(p) == Catch::Approx(2.0 * base).epsilon(1e-12));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        ChannelParams q;
        q.wavelength_m = uniform_real(rng, 0.01, 2.0);
        q.tx_power_w = uniform_real(rng, 1e-3, 10.0);
        q.gain_tx = uniform_real(rng, 0.25, 8.0);
        q.gain_rx = uniform_real(rng, 0.25, 8.0);
        q.rx_sensitivity_w = std::pow(10.0, uniform_real(rng, -13.0, -5.0));
        const double d = max_coverage_distance(q);
        CHECK(nearly_equal(received_power(q, d), q.rx_sensitivity_w, 1e-9));
    }
}

TEST_CASE("avg_snr composition", "[channel]") {
    ChannelParams p;
    p.gain_tx = 1.0;
    p.gain_rx = 1.0;
    p.wavelength_m = 4.0 * 3.141592653589793238462643383279502884;
    p.tx_power_w = 1e-9;
    p.noise_power_w = 1e-12;
    CHECK(avg_snr(p, 1.0) == Catch::Approx(1000.0).epsilon(1e-12));
    CHECK(avg_snr(p, 2.0) < avg_snr(p, 1.0));

    const ChannelParams defaults;
    const double at_dmax = avg_snr(defaults, max_coverage_distance(defaults));
    CHECK(nearly_equal(at_dmax, defaults.rx_sensitivity_w / defaults.noise_power_w, 1e-9));
}

TEST_CASE("channel parameter validation", "[channel]") {
    ChannelParams p;
    CHECK_NOTHROW(p.validate());
    p.q_max = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = ChannelParams{};
    p.rho_min = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = ChannelParams{};
    p.rho_min = 1.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = ChannelParams{};
    p.wavelength_m = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = ChannelParams{};
    p.h_min_m = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}
