// Batch experiment drivers behind the CLI and the C API: each run takes a
// resolved configuration, produces machine-readable output files in memory
// plus a JSON manifest with per-check results and a content hash, and
// reports whether every requested check passed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdwalk {

struct ExperimentConfig {
    std::string subcommand;     // fusion | walk | coset | hecke
    std::string q;              // "p/r" (exact) or decimal (floating)
    int n = 0;                  // rank (fusion, walk, hecke)
    int ball = 0;               // weight-ball radius (fusion, walk)
    int grid_depth = 0;         // K (coset)
    std::string levy;           // ';'-separated weight:mass pairs ("1:1")
    int steps = 0;
    int paths = 0;
    std::uint64_t seed = 0;
    std::string format = "csv";  // table format: csv | json
    int sites = 0;               // m (hecke)
    std::string variant = "all";
    int p2s = 0;                 // coset: verify p_{2s} identity up to this
    bool asymptotics = false;    // coset: float-mode a_k ~ k q^k C table
    int asym_terms = 128;
    int escape_threshold = 50;       // walk: final size counted as escaped
    double escape_min_fraction = -1;  // gate when >= 0
    double convergence_min = -1;      // coset: gate on 1 - nu_n(t) when >= 0

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct OutputFile {
    std::string name;
    std::string content;
};

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct RunResult {
    bool passed = false;
    std::vector<CheckResult> checks;
    std::vector<OutputFile> files;
    std::string manifest;  // serialized JSON, also placed in files
};

inline constexpr const char* kToolVersion = "0.1.0";

/// Dispatches on config.subcommand. Throws std::invalid_argument on a bad
/// configuration and std::domain_error on out-of-contract values.
RunResult run_experiment(const ExperimentConfig& config);

RunResult run_fusion(const ExperimentConfig& config);
RunResult run_walk(const ExperimentConfig& config);
RunResult run_coset(const ExperimentConfig& config);
RunResult run_hecke(const ExperimentConfig& config);

/// FNV-1a 64-bit content hash, hex encoded.
std::string content_hash(std::string_view payload);

}  // namespace qdwalk
