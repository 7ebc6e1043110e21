#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/empirical.hpp"

namespace grouplab {

enum class CellStatus : int { Pass = 0, Fail = 1, Skip = 2, Info = 3 };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Pass: return "pass";
        case CellStatus::Fail: return "fail";
        case CellStatus::Skip: return "skip";
        case CellStatus::Info: return "info";
    }
    return "?";
}

struct CellResult {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<EstimateWithCI> estimate;
    std::optional<double> exact;
    std::optional<double> bound;
    std::string bound_kind;  // "upper" / "lower" / "equals" / ""
    CellStatus status = CellStatus::Info;
    std::string note;
};

struct ExperimentReport {
    std::string experiment;
    std::string group;
    std::uint64_t seed = 0;
    std::vector<CellResult> cells;
    double wall_seconds = 0.0;  // reported only on request; keeps reports byte-reproducible

    bool all_pass() const;
    std::string to_json(bool with_timings = false) const;
    std::string to_text() const;
    std::string to_csv() const;
};

// Run parameters: a master seed, a global sample-count multiplier, a worker
// bound for independent grid cells, and raw key=value overrides from the
// config file (dotted per-experiment keys, e.g. "level-d.n_eval").
struct RunConfig {
    std::uint64_t seed = 42;
    double samples_scale = 1.0;
    int jobs = 0;  // 0 = hardware concurrency
    std::map<std::string, std::string> overrides;

    long get_long(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;

    long scaled(long base) const {
        const double v = static_cast<double>(base) * samples_scale;
        return v < 1.0 ? 1 : static_cast<long>(v);
    }
};

// Parse a flat key = value config file with [section] headers mapping to
// dotted keys. Returns the overrides map.
std::map<std::string, std::string> parse_config_file(const std::string& path);

ExperimentReport run_haar_check(const RunConfig& cfg);
ExperimentReport run_coupling_suite(const RunConfig& cfg);
ExperimentReport run_dims(const RunConfig& cfg);
ExperimentReport run_laplacian_audit(const RunConfig& cfg);
ExperimentReport run_level_d(const RunConfig& cfg);
ExperimentReport run_mixing(const RunConfig& cfg);
ExperimentReport run_product_free(const RunConfig& cfg);
ExperimentReport run_doubling(const RunConfig& cfg);
ExperimentReport run_repr_audits(const RunConfig& cfg);

std::vector<ExperimentReport> run_all(const RunConfig& cfg);
std::string reports_to_json(const std::vector<ExperimentReport>& reports, bool with_timings = false);

}  // namespace grouplab
