#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/norms.hpp"
#include "varlp/rng.hpp"
#include "varlp/weights.hpp"

namespace varlp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validated scenario configuration. All assertion thresholds live here, never
// in the scenario code; the shipped defaults pin them.
struct ScenarioConfig {
    std::string scenario;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir;  // empty: no files written
    nlohmann::json raw;   // the full validated document

    double threshold(const std::string& name) const;
    bool has(const std::string& name) const;
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config_file(const std::string& path);

// The shipped configuration for each scenario; --config overrides it.
nlohmann::json default_config(const std::string& scenario);
std::vector<std::string> scenario_names();

struct Assertion {
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "==" (how observed compares to threshold)
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    struct Row {
        std::string case_id;
        std::vector<double> values;
    };
    std::vector<Row> rows;
    std::vector<Assertion> assertions;

    bool pass() const;
    std::string csv() const;
    nlohmann::json summary() const;
    void write(const std::string& out_dir) const;  // <scenario>.csv / .json
};

Report run_scenario(const ScenarioConfig& config);

// Grid/exponent/weight/test-function constructors shared by the scenarios
// and the CLI. Specs are small json objects selecting a family by name.
Grid build_grid_from(const nlohmann::json& spec);
Exponent build_exponent(const Grid& g, const nlohmann::json& spec);
Weight build_weight(const Grid& g, const nlohmann::json& spec);

// Seeded test functions. Kinds: "indicator_sum" (sums of dyadic-interval
// indicators with dyadic amplitudes; identical as continuum functions across
// refinements), "bump", "power_profile". The draw consumes the rng
// independently of the grid resolution.
SampledFunction build_test_function(const Grid& g, const nlohmann::json& family,
                                    SplitMix& rng);

// Theorem 5.1 witness ratio: max over cubes of
// ||A_Q(f1,f2) w||_{p(.)} / (||f1 w1||_{p1(.)} ||f2 w2||_{p2(.)})
// with the duality witnesses f_j = w_j^{-1} chi_Q.
double necessity_ratio(const VectorWeight& vw, const CubeFamily& family,
                       const NormOptions& opts = {});

}  // namespace varlp
