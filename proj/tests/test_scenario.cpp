#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chernlab/scenario.hpp"

using namespace chernlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t count = 0;
    for (char c : text)
        if (c == '\n') ++count;
    return count;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("chernlab_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("scenario_files_parse_into_the_declared_fields") {
    std::istringstream in(
        "# comment line\n"
        "name = tiny\n"
        "model = haldane_minus\n"
        "s = 0.25\n"
        "nu = 0.5\n"
        "n = 8   # trailing comment\n"
        "domain = strip:L=1\n"
        "gap_lo = -0.2\n"
        "gap_hi = 0.2\n"
        "r_tr = 2\n"
        "seed = 42\n"
        "trials = 3\n"
        "format = csv\n"
        "ops = spectrum, density\n"
        "expect_density_max = 0.4\n");
    const Scenario sc = parse_scenario(in, "inline");
    CHECK(sc.name == "tiny");
    CHECK(sc.model == ModelKind::haldane_minus);
    CHECK(sc.s == 0.25);
    CHECK(sc.nu == 0.5);
    CHECK(sc.n == 8);
    CHECK(sc.domain == "strip:L=1");
    CHECK(sc.gap_lo == -0.2);
    CHECK(sc.gap_hi == 0.2);
    CHECK(sc.R_tr == 2);
    CHECK(sc.seed == 42);
    CHECK(sc.trials == 3);
    CHECK(sc.format == "csv");
    CHECK(sc.ops == std::vector<std::string>{"spectrum", "density"});
    CHECK(sc.expect_density_max == 0.4);
}

TEST_CASE("scenario_validation_reports_every_defect_at_once") {
    std::istringstream in(
        "n = 200\n"
        "s = -1\n"
        "gap_lo = 0.5\n"
        "gap_hi = -0.5\n"
        "trials = 0\n"
        "format = yaml\n"
        "ops = spectrum, warp\n");
    try {
        parse_scenario(in, "inline");
        FAIL("expected parameter_error");
    } catch (const parameter_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("inline") != std::string::npos);
        CHECK(msg.find("name: required") != std::string::npos);
        CHECK(msg.find("[5, 128]") != std::string::npos);
        CHECK(msg.find("s: must") != std::string::npos);
        CHECK(msg.find("gap_lo") != std::string::npos);
        CHECK(msg.find("trials:") != std::string::npos);
        CHECK(msg.find("format:") != std::string::npos);
        CHECK(msg.find("warp") != std::string::npos);
    }

    std::istringstream junk("name = x\nn = 12abc\n");
    CHECK_THROWS_AS(parse_scenario(junk, "inline"), parameter_error);
    std::istringstream noeq("name = x\njustaword\n");
    CHECK_THROWS_AS(parse_scenario(noeq, "inline"), parameter_error);
    CHECK_THROWS_AS(parse_scenario_file("/nonexistent/path.cfg"), io_error);
}

TEST_CASE("builtin_scenarios_resolve_by_name") {
    CHECK(builtin_names().size() == 3);
    for (const std::string& name : builtin_names()) {
        const Scenario sc = builtin_scenario(name);
        CHECK(sc.name == name);
        CHECK_FALSE(sc.ops.empty());
    }
    CHECK(builtin_scenario("halftorus-density").expect_density_max == 0.35);
    CHECK(builtin_scenario("strip-gap").expect_positive_margin);
    CHECK_THROWS_AS(builtin_scenario("no-such-scenario"), parameter_error);
}

TEST_CASE("config_hash_is_stable_and_sensitive") {
    const Scenario base = builtin_scenario("constants");
    CHECK(config_hash_hex(base) == config_hash_hex(base));
    CHECK(config_hash_hex(base).size() == 16);

    Scenario moved = base;
    moved.out_dir = "/somewhere/else";
    moved.format = "csv";
    CHECK(config_hash_hex(moved) == config_hash_hex(base)); // presentation only

    Scenario shifted = base;
    shifted.s = base.s + 1e-9;
    CHECK(config_hash_hex(shifted) != config_hash_hex(base));

    Scenario reseeded = base;
    reseeded.seed = base.seed + 1;
    CHECK(config_hash_hex(reseeded) != config_hash_hex(base));

    CHECK(fnv1a_hash("") == 14695981039346656037ULL);
    CHECK(fnv1a_hash("a") != fnv1a_hash("b"));
}

TEST_CASE("reports_are_byte_identical_across_reruns") {
    TempDir dir("rerun");
    Scenario sc = builtin_scenario("constants");
    sc.out_dir = (dir.path / "a").string();
    const RunReport rep1 = run_scenario(sc);
    const auto files1 = emit_report(rep1);
    REQUIRE(files1.size() == 1);
    const std::string body1 = slurp(files1[0]);

    sc.out_dir = (dir.path / "b").string();
    const auto files2 = emit_report(run_scenario(sc));
    REQUIRE(files2.size() == 1);
    CHECK(slurp(files2[0]) == body1);
    CHECK(body1.find(rep1.config_hash) != std::string::npos);
    CHECK(rep1.all_pass);
}

TEST_CASE("json_reports_round_trip_through_the_parser") {
    TempDir dir("roundtrip");
    Scenario sc;
    sc.name = "tiny-spectrum";
    sc.n = 8;
    sc.s = 0.5;
    sc.ops = {"spectrum"};
    sc.out_dir = dir.path.string();
    const RunReport rep = run_scenario(sc);
    const auto files = emit_report(rep);
    REQUIRE(files.size() == 1);

    const nlohmann::json doc = nlohmann::json::parse(slurp(files[0]));
    CHECK(doc["config_hash"] == rep.config_hash);
    CHECK(doc["scenario"]["name"] == "tiny-spectrum");
    CHECK(doc["scenario"]["n"] == 8);
    CHECK(doc["all_pass"] == rep.all_pass);
    CHECK(doc["results"]["spectrum"]["count"] == 2 * 8 * 8);
    const double lo = doc["results"]["spectrum"]["min"];
    const double hi = doc["results"]["spectrum"]["max"];
    CHECK(lo < -1.0);
    CHECK(hi > 1.0);
    CHECK(hi == doctest::Approx(-lo).epsilon(1e-9));
}

TEST_CASE("csv_spectrum_reports_carry_one_row_per_eigenvalue") {
    TempDir dir("csv");
    Scenario sc;
    sc.name = "tiny-csv";
    sc.n = 8;
    sc.ops = {"spectrum"};
    sc.format = "csv";
    sc.out_dir = dir.path.string();
    const auto files = emit_report(run_scenario(sc));

    std::string spectrum_file;
    for (const std::string& f : files)
        if (f.find("_spectrum.csv") != std::string::npos) spectrum_file = f;
    REQUIRE_FALSE(spectrum_file.empty());
    const std::string body = slurp(spectrum_file);
    // two comment lines, one header, one row per eigenvalue
    CHECK(line_count(body) == 2 + 1 + 2 * 8 * 8);
    CHECK(body.find("index,eigenvalue") != std::string::npos);
    CHECK(body.find("# config_hash=") != std::string::npos);
}

TEST_CASE("failed_ops_are_recorded_without_aborting_the_report") {
    TempDir dir("errs");
    Scenario sc;
    sc.name = "glue-needs-plus";
    sc.model = ModelKind::wallace_h0;
    sc.n = 8;
    sc.domain = "halfplane";
    sc.ops = {"interface_decay"};
    sc.out_dir = dir.path.string();
    const RunReport rep = run_scenario(sc);
    CHECK_FALSE(rep.all_pass);
    REQUIRE(rep.results.contains("interface_decay"));
    CHECK(rep.results["interface_decay"].contains("error"));
    const auto files = emit_report(rep);
    CHECK_FALSE(files.empty());
}

TEST_CASE("halftorus_scenario_reports_thin_gap_filling") {
    TempDir dir("halftorus");
    Scenario sc = builtin_scenario("halftorus-density");
    sc.out_dir = dir.path.string();
    const RunReport rep = run_scenario(sc);
    CHECK(rep.all_pass);
    const auto& density = rep.results["density"];
    CHECK(double(density["density"]) <= 0.35);
    CHECK(double(density["density"]) > 0.0);
    CHECK(density["pass"] == true);
}

TEST_CASE("strip_scenario_reports_a_positive_margin") {
    TempDir dir("strip");
    Scenario sc = builtin_scenario("strip-gap");
    sc.out_dir = dir.path.string();
    const RunReport rep = run_scenario(sc);
    CHECK(rep.all_pass);
    const auto& margin = rep.results["margin"];
    CHECK(double(margin["margin"]) > 0.0);
    CHECK(double(margin["min_spec_edge"]) > 0.0);
    CHECK(margin["pass"] == true);
    CHECK(rep.results["interface_decay"]["pass"] == true);
}
