#include "levylab/records.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace levylab {

void ExperimentSpec::validate() const {
    static const char* kinds[] = {"constants", "simulate",    "solve-torus", "solve-sphere",
                                  "multipliers", "ball-check", "sweep",       "fit"};
    bool ok = false;
    for (const char* k : kinds) ok |= kind == k;
    if (!ok) throw std::invalid_argument("ExperimentSpec: unknown kind '" + kind + "'");
    if (sweep) {
        if (sweep->size() < 2)
            throw std::invalid_argument("ExperimentSpec: sweep needs at least two eps values");
        for (std::size_t i = 0; i < sweep->size(); ++i) {
            const double e = (*sweep)[i];
            if (!(e > 0.0) || !(e < 0.5))
                throw std::invalid_argument("ExperimentSpec: sweep eps must lie in (0, 0.5)");
            if (i > 0 && !(e < (*sweep)[i - 1]))
                throw std::invalid_argument(
                    "ExperimentSpec: sweep eps values must be strictly decreasing");
        }
    }
}

nlohmann::json ExperimentSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["parameters"] = parameters;
    j["sweep"] = sweep ? nlohmann::json(*sweep) : nlohmann::json(nullptr);
    j["seed"] = seed;
    j["out_path"] = out_path;
    return j;
}

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.kind = j.at("kind").get<std::string>();
    s.parameters = j.at("parameters");
    if (!j.at("sweep").is_null()) s.sweep = j.at("sweep").get<std::vector<double>>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.out_path = j.at("out_path").get<std::string>();
    return s;
}

nlohmann::json ResultRecord::to_json() const {
    nlohmann::json j;
    j["spec"] = spec.to_json();
    j["outputs"] = outputs;
    j["wall_time_s"] = wall_time_s;
    j["version"] = version;
    j["timestamp"] = timestamp;
    return j;
}

ResultRecord ResultRecord::from_json(const nlohmann::json& j) {
    ResultRecord r;
    r.spec = ExperimentSpec::from_json(j.at("spec"));
    r.outputs = j.at("outputs");
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.version = j.at("version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

void atomic_write(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << text;
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic_write: rename failed for " + path);
}

} // namespace levylab
