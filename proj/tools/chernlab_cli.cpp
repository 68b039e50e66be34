#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "chernlab/bounds.hpp"
#include "chernlab/scenario.hpp"

namespace {

using namespace chernlab;

struct CommonOpts {
    std::string model = "haldane_plus";
    double s = 0.5;
    double nu = 0.25;
    int n = 24;
    std::string domain = "full";
    int r_tr = 0;
    std::uint64_t seed = 1;
    int trials = 8;
    std::string out = ".";
    std::string format = "json";
};

Scenario to_scenario(const CommonOpts& o, const std::string& name,
                     std::vector<std::string> ops) {
    Scenario sc;
    sc.name = name;
    sc.model = parse_model(o.model);
    sc.s = o.s;
    sc.nu = o.nu;
    sc.n = o.n;
    sc.domain = o.domain;
    sc.R_tr = o.r_tr;
    sc.seed = o.seed;
    sc.trials = o.trials;
    sc.out_dir = o.out;
    sc.format = o.format;
    sc.ops = std::move(ops);
    return sc;
}

int emit_and_report(const Scenario& sc) {
    RunReport rep = run_scenario(sc);
    std::fprintf(stderr, "[%s] wall %.1fs\n", sc.name.c_str(), rep.wall_seconds);
    for (const std::string& f : emit_report(rep))
        std::printf("wrote %s\n", f.c_str());
    std::printf("%s  config %s  %s\n", sc.name.c_str(), rep.config_hash.c_str(),
                rep.all_pass ? "PASS" : "FAIL");
    return rep.all_pass ? 0 : 1;
}

int do_constants(const CommonOpts& o) {
    Scenario sc = to_scenario(o, "constants", {"constants"});
    RunReport rep = run_scenario(sc);
    std::fprintf(stderr, "[constants] wall %.1fs\n", rep.wall_seconds);
    const auto& c = rep.results["constants"];
    if (c.contains("error")) {
        std::printf("error: %s\n", c["error"].get<std::string>().c_str());
        return 1;
    }
    for (const char* key : {"lambda0", "mu0", "C0", "rho0", "min_lambda_s"})
        std::printf("%-12s %s\n", key, g17(c[key].get<double>()).c_str());
    std::printf("%-12s %s\n", "gap_bound_ok", c["gap_bound_ok"].get<bool>() ? "yes" : "no");
    for (const std::string& f : emit_report(rep))
        std::printf("wrote %s\n", f.c_str());
    return 0; // a survey, not a check
}

int do_scan(double s, const std::vector<int>& sizes, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::ordered_json scan = run_density_scan(sizes, s, -0.5, 0.5);
    std::fprintf(stderr, "[scan] wall %.1fs\n",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    std::filesystem::create_directories(out);
    const std::string path = out + "/density_scan.json";
    std::ofstream file(path, std::ios::binary);
    file << scan.dump(2) << "\n";
    std::printf("wrote %s\n", path.c_str());
    for (const auto& row : scan["per_size"])
        std::printf("n=%-3d R=%-3d density=%.4f coefficient=%.4f\n", row["n"].get<int>(),
                    row["filling_radius"].get<int>(), row["density"].get<double>(),
                    row["coefficient"].get<double>());
    const bool ok = scan["strictly_decreasing"].get<bool>() &&
                    scan["coefficient_ratio"].get<double>() <= 2.0;
    std::printf("scan %s (decreasing=%s, coefficient ratio %.3f)\n", ok ? "PASS" : "FAIL",
                scan["strictly_decreasing"].get<bool>() ? "yes" : "no",
                scan["coefficient_ratio"].get<double>());
    return ok ? 0 : 1;
}

int do_run(const std::vector<std::string>& configs, int jobs, const std::string& out,
           const std::string& format) {
    std::vector<Scenario> scenarios;
    const auto builtins = builtin_names();
    for (const std::string& c : configs) {
        Scenario sc;
        if (std::find(builtins.begin(), builtins.end(), c) != builtins.end())
            sc = builtin_scenario(c);
        else
            sc = parse_scenario_file(c);
        if (!out.empty()) sc.out_dir = out;
        if (!format.empty()) sc.format = format;
        scenarios.push_back(std::move(sc));
    }

    std::vector<RunReport> reports(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < scenarios.size(); i = next.fetch_add(1))
            reports[i] = run_scenario(scenarios[i]);
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(scenarios.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int rc = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::fprintf(stderr, "[%s] wall %.1fs\n", scenarios[i].name.c_str(),
                     reports[i].wall_seconds);
        for (const std::string& f : emit_report(reports[i]))
            std::printf("wrote %s\n", f.c_str());
        std::printf("%s  config %s  %s\n", scenarios[i].name.c_str(),
                    reports[i].config_hash.c_str(), reports[i].all_pass ? "PASS" : "FAIL");
        if (!reports[i].all_pass) rc = 1;
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chernlab: a numerical laboratory for chiral lattice models"};
    app.require_subcommand(1);

    CommonOpts o;
    int jobs = 1;
    std::vector<std::string> configs;
    std::vector<int> sizes = {16, 24, 32, 48};

    auto add_common = [&o](CLI::App* sub, bool with_window) {
        sub->add_option("--s", o.s, "imaginary hopping strength")->capture_default_str();
        sub->add_option("--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--format", o.format, "json | csv | plotdata")->capture_default_str();
        sub->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
        if (with_window) {
            sub->add_option("--model", o.model,
                            "wallace_h0 | haldane_plus | haldane_minus | imaginary_s")
                ->capture_default_str();
            sub->add_option("--n", o.n, "window size")->capture_default_str();
            sub->add_option("--domain", o.domain,
                            "full | halfplane | quadrant | strip:L=.. | halftorus | ...")
                ->capture_default_str();
            sub->add_option("--nu", o.nu, "decay rate parameter")->capture_default_str();
        }
    };

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the model on the window");
    add_common(spectrum, true);

    auto* conduct = app.add_subcommand("conductance", "switch-commutator conductance and the "
                                                      "momentum-grid invariant");
    add_common(conduct, true);
    conduct->add_option("--r-tr", o.r_tr, "corner patch radius (0 picks n/4)")
        ->capture_default_str();

    auto* consts = app.add_subcommand("constants", "momentum-grid survey of the model constants");
    add_common(consts, false);

    auto* bounds = app.add_subcommand("bounds-check", "run the kernel-sum inequality sweep");
    add_common(bounds, false);

    auto* scan = app.add_subcommand("scan", "gap filling density across window sizes");
    add_common(scan, false);
    scan->add_option("--sizes", sizes, "window sizes (multiples of 4)")
        ->delimiter(',')
        ->capture_default_str();

    auto* run = app.add_subcommand("run", "run scenario config files or builtins");
    run->add_option("configs", configs,
                    "config files or builtin names (halftorus-density, strip-gap, constants)")
        ->required();
    run->add_option("--jobs", jobs, "scenarios to run in parallel")->capture_default_str();
    run->add_option("--out", o.out, "override output directory")->capture_default_str();
    run->add_option("--format", o.format, "override output format")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed())
            return emit_and_report(to_scenario(o, "spectrum", {"spectrum"}));
        if (conduct->parsed())
            return emit_and_report(to_scenario(o, "conductance", {"conductance"}));
        if (consts->parsed()) return do_constants(o);
        if (bounds->parsed())
            return emit_and_report(to_scenario(o, "bounds-check", {"bounds"}));
        if (scan->parsed()) return do_scan(o.s, sizes, o.out);
        if (run->parsed()) return do_run(configs, jobs, o.out, o.format);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
