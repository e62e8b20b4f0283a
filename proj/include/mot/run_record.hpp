#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mot/errors.hpp"

namespace mot {

// One solver run, persisted as a single ndjson line. The scenario hash binds
// the record to the exact input file bytes.

struct RunRecord {
    int schema_version = 1;
    std::string scenario_path;
    std::string scenario_hash;
    std::string strategy;
    std::uint64_t seed = 0;
    std::string status = "ok";  // "ok" or "error"
    std::string error;          // reason, only when status == "error"
    std::vector<int> tour;
    double cost = 0.0;
    double energy = 0.0;
    double coverage_fraction = 0.0;
    double wall_time_s = 0.0;
    double alpha = 0.0;
    bool feasible = false;

    bool operator==(const RunRecord&) const = default;
};

inline constexpr int kRunRecordSchemaVersion = 1;

inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(const void* data, std::size_t size) {
    const std::uint64_t h = fnv1a64(data, size);
    char buf[17] = {};
    for (int i = 0; i < 16; ++i)
        buf[15 - i] = "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return std::string(buf, 16);
}

inline std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for hashing");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64_hex(bytes.data(), bytes.size());
}

inline nlohmann::ordered_json to_json(const RunRecord& r) {
    auto finite = [](double v, const char* what) {
        if (!std::isfinite(v))
            throw DomainError(std::string("run record field '") + what + "' must be finite");
        return v;
    };
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["scenario_path"] = r.scenario_path;
    j["scenario_hash"] = r.scenario_hash;
    j["strategy"] = r.strategy;
    j["seed"] = r.seed;
    j["status"] = r.status;
    if (r.status != "ok") {
        j["error"] = r.error;
        return j;
    }
    j["tour"] = r.tour;
    j["cost"] = finite(r.cost, "cost");
    j["energy"] = finite(r.energy, "energy");
    j["coverage_fraction"] = finite(r.coverage_fraction, "coverage_fraction");
    j["wall_time_s"] = finite(r.wall_time_s, "wall_time_s");
    j["alpha"] = finite(r.alpha, "alpha");
    j["feasible"] = r.feasible;
    return j;
}

inline RunRecord parse_run_record(const std::string& line, int line_no = 1) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(line_no, std::string("invalid record: ") + e.what());
    }
    RunRecord r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kRunRecordSchemaVersion)
            throw SchemaError(line_no,
                              "unknown record version '" + std::to_string(r.schema_version) +
                                  "' (supported: " + std::to_string(kRunRecordSchemaVersion) + ")");
        r.scenario_path = j.at("scenario_path").get<std::string>();
        r.scenario_hash = j.at("scenario_hash").get<std::string>();
        r.strategy = j.at("strategy").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.status = j.at("status").get<std::string>();
        if (r.status != "ok") {
            r.error = j.value("error", std::string{});
            return r;
        }
        r.tour = j.at("tour").get<std::vector<int>>();
        r.cost = j.at("cost").get<double>();
        r.energy = j.at("energy").get<double>();
        r.coverage_fraction = j.at("coverage_fraction").get<double>();
        if (!(r.coverage_fraction >= 0.0 && r.coverage_fraction <= 1.0))
            throw SchemaError(line_no, "coverage_fraction outside [0, 1]");
        r.wall_time_s = j.at("wall_time_s").get<double>();
        r.alpha = j.at("alpha").get<double>();
        r.feasible = j.at("feasible").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(line_no, std::string("invalid record: ") + e.what());
    }
    return r;
}

inline void write_run_records(const std::vector<RunRecord>& records, std::ostream& out) {
    for (const RunRecord& r : records) out << to_json(r).dump() << "\n";
}

inline std::vector<RunRecord> load_run_records(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_run_record(line, line_no));
    }
    return out;
}

inline std::vector<RunRecord> load_run_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_run_records(in);
}

}  // namespace mot
