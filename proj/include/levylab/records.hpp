#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// Experiment configuration echo and result persistence. Doubles survive the
// JSON round trip bit-exactly (shortest-round-trip encoding on write, exact
// binary64 parse on read); records are written atomically (temp file +
// rename) so concurrent sweep points never leave torn output.

namespace levylab {

struct ExperimentSpec {
    std::string kind; // constants | simulate | solve-torus | solve-sphere |
                      // multipliers | ball-check | sweep | fit
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<std::vector<double>> sweep; // eps values, strictly decreasing
    std::uint64_t seed = 0;
    std::string out_path;

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentSpec from_json(const nlohmann::json& j);
};

struct ResultRecord {
    ExperimentSpec spec;
    nlohmann::json outputs = nlohmann::json::object();
    double wall_time_s = 0.0;
    std::string version;
    std::string timestamp; // ISO 8601 UTC

    nlohmann::json to_json() const;
    static ResultRecord from_json(const nlohmann::json& j);
};

std::string iso_timestamp_utc();

// write text to path via temp file + rename
void atomic_write(const std::string& path, const std::string& text);

} // namespace levylab
