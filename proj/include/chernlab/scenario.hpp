#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "chernlab/hamiltonians.hpp"

namespace chernlab {

/// One configured experiment: a model on a window with a domain, an energy
/// window of interest, and an ordered list of measurement ops.
struct Scenario {
    std::string name;
    ModelKind model = ModelKind::haldane_plus;
    double s = 0.5;
    double nu = 0.25;
    int n = 24;
    std::string domain = "full"; // domain descriptor; "halftorus" selects the
                                 // balanced half-window strip
    double gap_lo = -0.5;
    double gap_hi = 0.5;
    int R_tr = 0; // conductance truncation radius; 0 picks n/4
    std::uint64_t seed = 1;
    int trials = 8;
    std::vector<std::string> ops;
    std::string out_dir = ".";
    std::string format = "json"; // json | csv | plotdata

    // Optional expectations; zero disables them.
    double expect_density_max = 0.0;
    bool expect_positive_margin = false;
};

/// Parse a flat key = value config ('#' comments). Every invalid field is
/// reported in a single parameter_error.
Scenario parse_scenario(std::istream& in, const std::string& origin = "<stream>");
Scenario parse_scenario_file(const std::string& path);

/// Built-in scenarios: "halftorus-density", "strip-gap", "constants".
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_names();

/// JSON image of the scenario fields embedded in every JSON report.
nlohmann::ordered_json scenario_json(const Scenario& sc);

/// Canonical serialized form of the physics-relevant fields (presentation
/// fields excluded), and its FNV-1a hash used to stamp every output.
std::string canonical_config(const Scenario& sc);
std::uint64_t fnv1a_hash(const std::string& text);
std::string config_hash_hex(const Scenario& sc);

struct RunReport {
    Scenario scenario;
    nlohmann::ordered_json results;
    bool all_pass = true;
    double wall_seconds = 0.0; // reported on stderr, never written to files
    std::string config_hash;
};

/// Execute every op of the scenario in order, short-circuiting if an op
/// throws (the error is recorded and all_pass drops to false).
RunReport run_scenario(const Scenario& sc);

/// Write the report into scenario.out_dir in the scenario's format. Returns
/// the list of files written. Outputs are byte-stable for a fixed config and
/// seed.
std::vector<std::string> emit_report(const RunReport& report);

/// Gap filling versus window size: run the balanced half-window scenario at
/// each n, fit the density coefficient, and report per-size values.
nlohmann::ordered_json run_density_scan(const std::vector<int>& sizes, double s, double gap_lo,
                                        double gap_hi);

/// Fixed-width float formatting used for all emitted numbers.
std::string g17(double v);

} // namespace chernlab
