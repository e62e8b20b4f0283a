#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "mot/errors.hpp"
#include "mot/scenario.hpp"

namespace mot {

// Scenario files are line-based text with a fixed field order (see
// docs/scenario_format.md). Numbers are written with shortest round-trip
// precision so save/load is an exact identity and files diff cleanly.

inline constexpr int kScenarioSchemaVersion = 1;

namespace ioutil {

inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(std::uint64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(int v) {
    char buf[16];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline double parse_double(const std::string& tok, int line) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw SchemaError(line, "expected a number, got '" + tok + "'");
    return v;
}

inline long long parse_int(const std::string& tok, int line) {
    long long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw SchemaError(line, "expected an integer, got '" + tok + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& tok, int line) {
    std::uint64_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw SchemaError(line, "expected an unsigned integer, got '" + tok + "'");
    return v;
}

// Sequential line reader that tracks 1-based line numbers for diagnostics.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> next(const std::string& key, std::size_t n_values) {
        std::string line;
        if (!std::getline(in_, line))
            throw SchemaError(line_no_ + 1, "unexpected end of file, expected '" + key + "'");
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty() || toks[0] != key)
            throw SchemaError(line_no_, "expected field '" + key + "', got '" +
                                            (toks.empty() ? std::string("<blank>") : toks[0]) +
                                            "'");
        if (toks.size() != n_values + 1)
            throw SchemaError(line_no_, "field '" + key + "' takes " + std::to_string(n_values) +
                                            " value(s), got " + std::to_string(toks.size() - 1));
        toks.erase(toks.begin());
        return toks;
    }

    void expect_eof() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!split_ws(line).empty())
                throw SchemaError(line_no_, "unexpected trailing content");
        }
    }

    int line() const { return line_no_; }

  private:
    std::istream& in_;
    int line_no_ = 0;
};

}  // namespace ioutil

inline void save_scenario(const Scenario& sc, std::ostream& out) {
    using ioutil::fmt;
    out << "mot-scenario " << kScenarioSchemaVersion << "\n";
    out << "seed " << fmt(sc.seed) << "\n";
    out << "region " << fmt(sc.region.min_corner.x) << ' ' << fmt(sc.region.min_corner.y) << ' '
        << fmt(sc.region.max_corner.x) << ' ' << fmt(sc.region.max_corner.y) << "\n";
    const ChannelParams& ch = sc.channel;
    out << "modulation " << to_string(ch.modulation.scheme) << ' ' << fmt(ch.modulation.c_m) << ' '
        << fmt(ch.modulation.k_m) << "\n";
    out << "packet_bits " << fmt(ch.packet_bits) << "\n";
    out << "q_max " << fmt(ch.q_max) << "\n";
    out << "tx_power_w " << fmt(ch.tx_power_w) << "\n";
    out << "gain_tx " << fmt(ch.gain_tx) << "\n";
    out << "gain_rx " << fmt(ch.gain_rx) << "\n";
    out << "wavelength_m " << fmt(ch.wavelength_m) << "\n";
    out << "rx_sensitivity_w " << fmt(ch.rx_sensitivity_w) << "\n";
    out << "noise_power_w " << fmt(ch.noise_power_w) << "\n";
    out << "rho_min " << fmt(ch.rho_min) << "\n";
    out << "h_min_m " << fmt(ch.h_min_m) << "\n";
    out << "restricted_count " << fmt(static_cast<int>(sc.restricted.size())) << "\n";
    for (const Rect& r : sc.restricted)
        out << "restricted " << fmt(r.min_corner.x) << ' ' << fmt(r.min_corner.y) << ' '
            << fmt(r.max_corner.x) << ' ' << fmt(r.max_corner.y) << "\n";
    out << "sensor_count " << fmt(static_cast<int>(sc.sensors.size())) << "\n";
    for (const Sensor& s : sc.sensors)
        out << "sensor " << fmt(s.id) << ' ' << fmt(s.position.x) << ' ' << fmt(s.position.y)
            << "\n";
    out << "stop_count " << fmt(static_cast<int>(sc.stops.size())) << "\n";
    for (const Stop& t : sc.stops)
        out << "stop " << fmt(t.id) << ' ' << (t.is_charging_station ? '1' : '0') << ' '
            << fmt(t.position.x) << ' ' << fmt(t.position.y) << "\n";
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_scenario(sc, out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline Scenario load_scenario(std::istream& in) {
    using namespace ioutil;
    LineReader rd(in);

    {
        auto v = rd.next("mot-scenario", 1);
        const long long version = parse_int(v[0], rd.line());
        if (version != kScenarioSchemaVersion)
            throw SchemaError(rd.line(), "unknown scenario version '" + v[0] +
                                             "' (supported: " +
                                             std::to_string(kScenarioSchemaVersion) + ")");
    }

    // take the token first: reading rd.line() in the same expression as
    // rd.next() would leave the line attribution to evaluation order
    auto read_double = [&rd](const char* key) {
        const std::string tok = rd.next(key, 1)[0];
        return parse_double(tok, rd.line());
    };
    auto read_int = [&rd](const char* key) {
        const std::string tok = rd.next(key, 1)[0];
        return parse_int(tok, rd.line());
    };

    Scenario sc;
    {
        const std::string tok = rd.next("seed", 1)[0];
        sc.seed = parse_u64(tok, rd.line());
    }

    {
        auto v = rd.next("region", 4);
        const double x0 = parse_double(v[0], rd.line()), y0 = parse_double(v[1], rd.line());
        const double x1 = parse_double(v[2], rd.line()), y1 = parse_double(v[3], rd.line());
        try {
            sc.region = Rect{{x0, y0}, {x1, y1}};
        } catch (const DomainError& e) {
            throw SchemaError(rd.line(), e.what());
        }
    }

    ChannelParams ch;
    {
        auto v = rd.next("modulation", 3);
        const double c_m = parse_double(v[1], rd.line());
        const double k_m = parse_double(v[2], rd.line());
        if (!(c_m > 0.0) || !(k_m > 0.0))
            throw SchemaError(rd.line(), "modulation coefficients must be positive");
        if (v[0] == "FSK")
            ch.modulation = Modulation{ModulationScheme::FSK, c_m, k_m};
        else if (v[0] == "BPSK")
            ch.modulation = Modulation{ModulationScheme::BPSK, c_m, k_m};
        else if (v[0] == "Custom")
            ch.modulation = Modulation{ModulationScheme::Custom, c_m, k_m};
        else
            throw SchemaError(rd.line(), "unknown modulation scheme '" + v[0] + "'");
    }
    auto positive = [&rd](double v, const char* what) {
        if (!(v > 0.0)) throw SchemaError(rd.line(), std::string(what) + " must be positive");
        return v;
    };
    {
        const long long bits = read_int("packet_bits");
        if (bits < 1) throw SchemaError(rd.line(), "packet_bits must be >= 1");
        ch.packet_bits = static_cast<int>(bits);
    }
    {
        const long long q = read_int("q_max");
        if (q < 1) throw SchemaError(rd.line(), "q_max must be >= 1");
        ch.q_max = static_cast<int>(q);
    }
    ch.tx_power_w = positive(read_double("tx_power_w"), "tx_power_w");
    ch.gain_tx = positive(read_double("gain_tx"), "gain_tx");
    ch.gain_rx = positive(read_double("gain_rx"), "gain_rx");
    ch.wavelength_m = positive(read_double("wavelength_m"), "wavelength_m");
    ch.rx_sensitivity_w = positive(read_double("rx_sensitivity_w"), "rx_sensitivity_w");
    ch.noise_power_w = positive(read_double("noise_power_w"), "noise_power_w");
    {
        const double r = read_double("rho_min");
        if (!(r >= 0.0 && r <= 1.0)) throw SchemaError(rd.line(), "rho_min must be in [0, 1]");
        ch.rho_min = r;
    }
    {
        const double h = read_double("h_min_m");
        if (!(h >= 0.0)) throw SchemaError(rd.line(), "h_min_m must be >= 0");
        ch.h_min_m = h;
    }
    sc.channel = ch;

    {
        const long long count = read_int("restricted_count");
        if (count < 0) throw SchemaError(rd.line(), "restricted_count must be >= 0");
        for (long long i = 0; i < count; ++i) {
            auto v = rd.next("restricted", 4);
            try {
                sc.restricted.push_back(Rect{{parse_double(v[0], rd.line()),
                                              parse_double(v[1], rd.line())},
                                             {parse_double(v[2], rd.line()),
                                              parse_double(v[3], rd.line())}});
            } catch (const DomainError& e) {
                throw SchemaError(rd.line(), e.what());
            }
        }
    }

    {
        const long long count = read_int("sensor_count");
        if (count < 0) throw SchemaError(rd.line(), "sensor_count must be >= 0");
        sc.sensors.reserve(static_cast<std::size_t>(count));
        for (long long i = 0; i < count; ++i) {
            auto v = rd.next("sensor", 3);
            const long long id = parse_int(v[0], rd.line());
            if (id != i)
                throw SchemaError(rd.line(), "sensor ids must be dense and ascending (expected " +
                                                 std::to_string(i) + ", got " + v[0] + ")");
            sc.sensors.push_back({static_cast<int>(id),
                                  {parse_double(v[1], rd.line()), parse_double(v[2], rd.line())}});
            if (!is_finite(sc.sensors.back().position))
                throw SchemaError(rd.line(), "sensor position must be finite");
        }
    }

    {
        const long long count = read_int("stop_count");
        if (count < 1) throw SchemaError(rd.line(), "stop_count must be >= 1");
        sc.stops.reserve(static_cast<std::size_t>(count));
        for (long long i = 0; i < count; ++i) {
            auto v = rd.next("stop", 4);
            const long long id = parse_int(v[0], rd.line());
            if (id != i)
                throw SchemaError(rd.line(), "stop ids must be dense and ascending (expected " +
                                                 std::to_string(i) + ", got " + v[0] + ")");
            const long long charging = parse_int(v[1], rd.line());
            if (charging != 0 && charging != 1)
                throw SchemaError(rd.line(), "charging flag must be 0 or 1");
            if ((charging == 1) != (i == 0))
                throw SchemaError(rd.line(),
                                  "exactly stop 0 must carry the charging flag");
            sc.stops.push_back({static_cast<int>(id), {parse_double(v[2], rd.line()),
                                                       parse_double(v[3], rd.line())},
                                charging == 1});
            if (!is_finite(sc.stops.back().position))
                throw SchemaError(rd.line(), "stop position must be finite");
        }
    }

    rd.expect_eof();
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_scenario(in);
}

inline std::string scenario_to_string(const Scenario& sc) {
    std::ostringstream out;
    save_scenario(sc, out);
    return out.str();
}

}  // namespace mot
