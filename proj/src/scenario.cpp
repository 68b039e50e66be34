#include "chernlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "chernlab/bounds.hpp"
#include "chernlab/conductance.hpp"
#include "chernlab/domains.hpp"
#include "chernlab/interface.hpp"
#include "chernlab/spectral.hpp"

namespace chernlab {

namespace {

constexpr const char* kVersion = "chernlab 0.1.0";

const std::vector<std::string>& known_ops() {
    static const std::vector<std::string> ops = {
        "spectrum", "density", "conductance", "margin",
        "constants", "bounds", "decay", "interface_decay", "strip_ratio",
    };
    return ops;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Domain resolve_domain(const std::string& descriptor, int n) {
    if (descriptor == "halftorus") {
        DomainParams p;
        p.L = n / 4.0 - 0.5;
        p.c = -0.5;
        Domain d = make_domain(Shape::strip, p);
        d.label = "halftorus";
        return d;
    }
    return parse_domain(descriptor);
}

nlohmann::ordered_json check_json(const BoundCheck& c) {
    return {{"name", c.name}, {"params", c.params}, {"lhs", c.lhs}, {"rhs", c.rhs},
            {"pass", c.pass}};
}

/// Shared lazily-built state for the ops of one run.
struct RunState {
    const Scenario& sc;
    TorusWindow w;
    Domain dom;
    bool glued; // domain-restricted scenarios use the edge operator

    Eigen::MatrixXcd matrix;
    InterfaceOperator iface{Eigen::MatrixXcd(), Eigen::MatrixXcd(), TorusWindow(5), ""};
    bool have_matrix = false;
    Eigen::VectorXd evs;
    bool have_evs = false;
    SpectralData sd;
    bool have_sd = false;

    RunState(const Scenario& s, const TorusWindow& win, Domain d)
        : sc(s), w(win), dom(std::move(d)), glued(s.domain != "full") {}

    const Eigen::MatrixXcd& operator_matrix() {
        if (!have_matrix) {
            if (glued) {
                if (sc.model != ModelKind::haldane_plus)
                    throw parameter_error("domain-restricted scenarios glue the chiral plus "
                                          "model; set model = haldane_plus");
                iface = assemble_haldane_edge(sc.s, dom, w);
                matrix = iface.matrix;
            } else {
                matrix = assemble(build_model(sc.model, sc.s), w);
            }
            have_matrix = true;
        }
        return matrix;
    }

    const Eigen::VectorXd& eigenvalues() {
        if (!have_evs) {
            if (have_sd) {
                evs = sd.eigenvalues;
            } else {
                evs = eigenvalues_only(operator_matrix());
            }
            have_evs = true;
        }
        return evs;
    }

    const SpectralData& spectral() {
        if (!have_sd) {
            sd = eig_hermitian(operator_matrix());
            have_sd = true;
            evs = sd.eigenvalues;
            have_evs = true;
        }
        return sd;
    }
};

nlohmann::ordered_json op_spectrum(RunState& st) {
    const Eigen::VectorXd& evs = st.eigenvalues();
    nlohmann::ordered_json j;
    j["count"] = evs.size();
    j["min"] = evs.minCoeff();
    j["max"] = evs.maxCoeff();
    j["values"] = std::vector<double>(evs.data(), evs.data() + evs.size());
    return j;
}

nlohmann::ordered_json op_density(RunState& st, bool& all_pass) {
    const FillingReport fill = filling_radius(st.dom, st.w);
    const DensityReport rep = delta_density(st.eigenvalues(), st.sc.gap_lo, st.sc.gap_hi,
                                            static_cast<double>(fill.radius));
    nlohmann::ordered_json j;
    j["lo"] = rep.lo;
    j["hi"] = rep.hi;
    j["count"] = rep.count;
    j["density"] = rep.density;
    j["filling_radius"] = fill.radius;
    j["coefficient"] = rep.coefficient;
    if (st.sc.expect_density_max > 0.0) {
        j["max_allowed"] = st.sc.expect_density_max;
        const bool ok = rep.density <= st.sc.expect_density_max;
        j["pass"] = ok;
        all_pass = all_pass && ok;
    }
    return j;
}

nlohmann::ordered_json op_conductance(RunState& st) {
    const SpectralData& sd = st.spectral();
    const Projector proj = spectral_projector(sd, 0.0);
    const int R_tr = st.sc.R_tr > 0 ? st.sc.R_tr : st.w.n() / 4;
    const ConductanceReport rep =
        sigma_realspace(proj.matrix, st.w, SwitchPair{{0, 0}}, R_tr);
    nlohmann::ordered_json j;
    j["model"] = model_name(st.sc.model);
    j["s"] = st.sc.s;
    j["n"] = st.w.n();
    j["corner"] = {rep.corner.x1, rep.corner.x2};
    j["R_tr"] = rep.truncation_radius;
    j["sigma_raw"] = rep.sigma;
    j["sigma_rounded"] = rep.sigma_rounded;
    j["defect"] = rep.rounding_defect;
    try {
        j["chern"] = chern_fhs(make_symbol(st.sc.model, st.sc.s), 64);
    } catch (const singularity_error&) {
        j["chern"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json op_margin(RunState& st, bool& all_pass) {
    const MarginReport rep = invertibility_margin(st.sc.s, st.dom, st.w);
    const Eigen::VectorXd& evs = st.eigenvalues();
    const double min_spec_edge = evs.cwiseAbs().minCoeff();
    nlohmann::ordered_json j;
    j["norm"] = rep.norm;
    j["margin"] = rep.margin;
    j["min_spec_plus"] = rep.min_spec_plus;
    j["min_singular_bound"] = rep.min_singular_bound;
    j["min_spec_edge"] = min_spec_edge;
    if (rep.margin > 0.0) {
        const bool ok = min_spec_edge >= rep.min_singular_bound - 1e-9;
        j["bound_ok"] = ok;
        all_pass = all_pass && ok;
    }
    if (st.sc.expect_positive_margin) {
        const bool ok = rep.margin > 0.0;
        j["pass"] = ok;
        all_pass = all_pass && ok;
    }
    return j;
}

nlohmann::ordered_json op_constants(RunState& st) {
    const ModelConstants mc = model_constants(512, st.sc.s);
    nlohmann::ordered_json j;
    j["grid_n"] = mc.grid_n;
    j["s"] = mc.s_used;
    j["lambda0"] = mc.lambda0;
    j["mu0"] = mc.mu0;
    j["C0"] = mc.C0;
    j["rho0"] = mc.rho0;
    j["min_lambda_s"] = mc.min_lambda_s;
    j["gap_bound_ok"] = mc.gap_bound_ok;
    return j;
}

nlohmann::ordered_json op_bounds(RunState& st, bool& all_pass) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const BoundCheck& c : default_bound_sweep(st.sc.seed)) {
        arr.push_back(check_json(c));
        all_pass = all_pass && c.pass;
    }
    return arr;
}

nlohmann::ordered_json op_decay(RunState& st, bool& all_pass) {
    const double gap = gap_at(st.eigenvalues(), 0.0);
    if (gap <= 1e-9) throw precondition_error("decay: no spectral gap at energy zero");
    const DecayFit fit = decay_probe(st.operator_matrix(), st.w, ProbeKind::projector,
                                     cplx(0.0, 0.0), st.sc.nu, gap);
    nlohmann::ordered_json j;
    j["gap"] = gap;
    j["fit_rate"] = fit.fit_rate;
    j["fit_prefactor"] = fit.fit_prefactor;
    j["bound_rate"] = fit.bound_rate;
    j["bound_prefactor"] = fit.bound_prefactor;
    j["pointwise_ok"] = fit.pointwise_ok;
    j["max_by_distance"] = fit.max_by_distance;
    all_pass = all_pass && fit.pointwise_ok;
    return j;
}

nlohmann::ordered_json op_interface_decay(RunState& st, bool& all_pass) {
    st.operator_matrix();
    if (!st.glued)
        throw parameter_error("interface_decay requires a domain-restricted scenario");
    const InterfaceDecayReport rep = verify_interface_decay(st.iface, st.dom, st.sc.nu);
    nlohmann::ordered_json j;
    j["nu"] = rep.nu;
    j["worst_ratio"] = rep.worst_ratio;
    j["pass"] = rep.pass;
    all_pass = all_pass && rep.pass;
    return j;
}

nlohmann::ordered_json op_strip_ratio(RunState& st, bool& all_pass) {
    if (st.dom.shape != Shape::strip)
        throw parameter_error("strip_ratio requires a strip domain");
    const StripRatioReport rep =
        strip_inverse_ratio(st.dom.params.L, st.sc.s, st.w.n(), st.sc.trials, st.sc.seed);
    nlohmann::ordered_json j;
    j["L"] = rep.L;
    j["s"] = rep.s;
    j["trials"] = rep.trials;
    j["max_ratio"] = rep.max_ratio;
    j["bound"] = rep.bound;
    j["pass"] = rep.pass;
    all_pass = all_pass && rep.pass;
    return j;
}

} // namespace

nlohmann::ordered_json scenario_json(const Scenario& sc) {
    nlohmann::ordered_json j;
    j["name"] = sc.name;
    j["model"] = model_name(sc.model);
    j["s"] = sc.s;
    j["nu"] = sc.nu;
    j["n"] = sc.n;
    j["domain"] = sc.domain;
    j["gap_lo"] = sc.gap_lo;
    j["gap_hi"] = sc.gap_hi;
    j["r_tr"] = sc.R_tr;
    j["seed"] = sc.seed;
    j["trials"] = sc.trials;
    j["ops"] = sc.ops;
    j["expect_density_max"] = sc.expect_density_max;
    j["expect_positive_margin"] = sc.expect_positive_margin;
    return j;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string canonical_config(const Scenario& sc) {
    std::map<std::string, std::string> kv;
    kv["name"] = sc.name;
    kv["model"] = model_name(sc.model);
    kv["s"] = g17(sc.s);
    kv["nu"] = g17(sc.nu);
    kv["n"] = std::to_string(sc.n);
    kv["domain"] = sc.domain;
    kv["gap_lo"] = g17(sc.gap_lo);
    kv["gap_hi"] = g17(sc.gap_hi);
    kv["r_tr"] = std::to_string(sc.R_tr);
    kv["seed"] = std::to_string(sc.seed);
    kv["trials"] = std::to_string(sc.trials);
    kv["expect_density_max"] = g17(sc.expect_density_max);
    kv["expect_positive_margin"] = sc.expect_positive_margin ? "1" : "0";
    std::string ops;
    for (const auto& op : sc.ops) {
        if (!ops.empty()) ops += ",";
        ops += op;
    }
    kv["ops"] = ops;
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string config_hash_hex(const Scenario& sc) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(canonical_config(sc))));
    return buf;
}

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    Scenario sc;
    sc.name.clear();
    std::vector<std::string> errors;
    std::string line;
    int lineno = 0;
    auto fail = [&errors, &lineno](const std::string& msg) {
        errors.push_back("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail("expected key = value, got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto number = [&](double& target) {
            try {
                std::size_t used = 0;
                target = std::stod(val, &used);
                if (used != val.size()) fail("trailing characters in number '" + val + "'");
            } catch (const std::exception&) {
                fail("bad number '" + val + "' for " + key);
            }
        };
        auto integer = [&](auto& target) {
            try {
                std::size_t used = 0;
                target = static_cast<std::remove_reference_t<decltype(target)>>(
                    std::stoll(val, &used));
                if (used != val.size()) fail("trailing characters in integer '" + val + "'");
            } catch (const std::exception&) {
                fail("bad integer '" + val + "' for " + key);
            }
        };
        if (key == "name") sc.name = val;
        else if (key == "model") {
            try { sc.model = parse_model(val); } catch (const parameter_error& e) { fail(e.what()); }
        }
        else if (key == "s") number(sc.s);
        else if (key == "nu") number(sc.nu);
        else if (key == "n") integer(sc.n);
        else if (key == "domain") sc.domain = val;
        else if (key == "gap_lo") number(sc.gap_lo);
        else if (key == "gap_hi") number(sc.gap_hi);
        else if (key == "r_tr") integer(sc.R_tr);
        else if (key == "seed") integer(sc.seed);
        else if (key == "trials") integer(sc.trials);
        else if (key == "out") sc.out_dir = val;
        else if (key == "format") sc.format = val;
        else if (key == "expect_density_max") number(sc.expect_density_max);
        else if (key == "expect_positive_margin") sc.expect_positive_margin = (val == "1" || val == "true");
        else if (key == "ops") {
            sc.ops.clear();
            std::stringstream ss(val);
            std::string op;
            while (std::getline(ss, op, ',')) {
                op = trim(op);
                if (!op.empty()) sc.ops.push_back(op);
            }
        }
        else fail("unknown key '" + key + "'");
    }

    lineno = 0; // whole-file validation below
    if (sc.name.empty()) errors.push_back("name: required");
    if (sc.n < 5 || sc.n > 128) errors.push_back("n: must lie in [5, 128]");
    if (sc.s < 0.0) errors.push_back("s: must be nonnegative");
    if (!(sc.nu > 0.0)) errors.push_back("nu: must be positive");
    if (!(sc.gap_lo < sc.gap_hi)) errors.push_back("gap window: gap_lo must be below gap_hi");
    if (sc.R_tr < 0) errors.push_back("r_tr: must be nonnegative");
    if (sc.R_tr > 0 && 4 * sc.R_tr > sc.n) errors.push_back("r_tr: 4 R_tr must not exceed n");
    if (sc.trials < 1) errors.push_back("trials: must be at least 1");
    if (sc.format != "json" && sc.format != "csv" && sc.format != "plotdata")
        errors.push_back("format: must be json, csv, or plotdata");
    if (sc.ops.empty()) errors.push_back("ops: at least one op required");
    for (const auto& op : sc.ops) {
        const auto& known = known_ops();
        if (std::find(known.begin(), known.end(), op) == known.end())
            errors.push_back("ops: unknown op '" + op + "'");
    }
    if (sc.domain != "halftorus") {
        try {
            parse_domain(sc.domain);
        } catch (const std::exception& e) {
            errors.push_back(std::string("domain: ") + e.what());
        }
    }

    if (!errors.empty()) {
        std::string msg = "invalid scenario (" + origin + "): ";
        for (std::size_t i = 0; i < errors.size(); ++i) {
            if (i) msg += "; ";
            msg += errors[i];
        }
        throw parameter_error(msg);
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("parse_scenario_file: cannot open '" + path + "'");
    return parse_scenario(in, path);
}

std::vector<std::string> builtin_names() {
    return {"halftorus-density", "strip-gap", "constants"};
}

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    if (name == "halftorus-density") {
        sc.model = ModelKind::haldane_plus;
        sc.s = 0.5;
        sc.n = 32;
        sc.domain = "halftorus";
        sc.gap_lo = -0.5;
        sc.gap_hi = 0.5;
        sc.ops = {"spectrum", "density"};
        sc.expect_density_max = 0.35;
    } else if (name == "strip-gap") {
        sc.model = ModelKind::haldane_plus;
        sc.s = 0.01;
        sc.n = 32;
        sc.domain = "strip:L=2";
        sc.ops = {"margin", "interface_decay"};
        sc.expect_positive_margin = true;
    } else if (name == "constants") {
        sc.model = ModelKind::haldane_plus;
        sc.s = 0.5;
        sc.n = 24;
        sc.ops = {"constants"};
    } else {
        throw parameter_error("builtin_scenario: unknown builtin '" + name +
                              "'; known: halftorus-density, strip-gap, constants");
    }
    return sc;
}

RunReport run_scenario(const Scenario& sc) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.scenario = sc;
    rep.config_hash = config_hash_hex(sc);

    TorusWindow w(sc.n);
    RunState st(sc, w, resolve_domain(sc.domain, sc.n));

    for (const std::string& op : sc.ops) {
        try {
            if (op == "spectrum") rep.results[op] = op_spectrum(st);
            else if (op == "density") rep.results[op] = op_density(st, rep.all_pass);
            else if (op == "conductance") rep.results[op] = op_conductance(st);
            else if (op == "margin") rep.results[op] = op_margin(st, rep.all_pass);
            else if (op == "constants") rep.results[op] = op_constants(st);
            else if (op == "bounds") rep.results[op] = op_bounds(st, rep.all_pass);
            else if (op == "decay") rep.results[op] = op_decay(st, rep.all_pass);
            else if (op == "interface_decay") rep.results[op] = op_interface_decay(st, rep.all_pass);
            else if (op == "strip_ratio") rep.results[op] = op_strip_ratio(st, rep.all_pass);
            else throw parameter_error("run_scenario: unknown op '" + op + "'");
        } catch (const std::exception& e) {
            rep.results[op] = {{"error", e.what()}};
            rep.all_pass = false;
            break; // contract failures stop the remaining ops
        }
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

void write_text(const std::string& path, const std::string& text,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("emit_report: cannot write '" + path + "'");
    out << text;
    written.push_back(path);
}

std::string file_header(const RunReport& rep) {
    return "# config_hash=" + rep.config_hash + "\n# version=" + std::string(kVersion) + "\n";
}

void flatten(const nlohmann::ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        if (j.size() > 16) {
            rows.emplace_back(prefix + ".count", std::to_string(j.size()));
        } else {
            for (std::size_t i = 0; i < j.size(); ++i)
                flatten(j[i], prefix + "." + std::to_string(i), rows);
        }
    } else if (j.is_number_float()) {
        rows.emplace_back(prefix, g17(j.get<double>()));
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

} // namespace

std::vector<std::string> emit_report(const RunReport& rep) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    fs::create_directories(rep.scenario.out_dir);
    const std::string base = rep.scenario.out_dir + "/" + rep.scenario.name;

    if (rep.scenario.format == "json") {
        nlohmann::ordered_json doc;
        doc["config_hash"] = rep.config_hash;
        doc["version"] = kVersion;
        doc["scenario"] = scenario_json(rep.scenario);
        doc["all_pass"] = rep.all_pass;
        doc["results"] = rep.results;
        write_text(base + ".json", doc.dump(2) + "\n", written);
        return written;
    }

    if (rep.scenario.format == "csv") {
        std::string summary = file_header(rep) + "op,key,value\n";
        for (const auto& [op, body] : rep.results.items()) {
            if (op == "spectrum" && body.contains("values")) {
                std::string csv = file_header(rep) + "index,eigenvalue\n";
                const auto& vals = body["values"];
                for (std::size_t i = 0; i < vals.size(); ++i)
                    csv += std::to_string(i) + "," + g17(vals[i].get<double>()) + "\n";
                write_text(base + "_spectrum.csv", csv, written);
            }
            if (op == "bounds") {
                std::string csv = file_header(rep) + "name,params,lhs,rhs,ratio,pass\n";
                for (const auto& c : body) {
                    const double lhs = c["lhs"].get<double>();
                    const double rhs = c["rhs"].get<double>();
                    csv += c["name"].get<std::string>() + ",\"" +
                           c["params"].get<std::string>() + "\"," + g17(lhs) + "," + g17(rhs) +
                           "," + g17(rhs > 0 ? lhs / rhs : 0.0) + "," +
                           (c["pass"].get<bool>() ? "1" : "0") + "\n";
                }
                write_text(base + "_bounds.csv", csv, written);
                continue;
            }
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(body, "", rows);
            for (const auto& [k, v] : rows) summary += op + "," + k + "," + v + "\n";
        }
        write_text(base + "_summary.csv", summary, written);
        return written;
    }

    // plotdata: one whitespace-separated table per op with a natural curve.
    for (const auto& [op, body] : rep.results.items()) {
        if (op == "spectrum" && body.contains("values")) {
            std::string dat = file_header(rep) + "# index eigenvalue\n";
            const auto& vals = body["values"];
            for (std::size_t i = 0; i < vals.size(); ++i)
                dat += std::to_string(i) + " " + g17(vals[i].get<double>()) + "\n";
            write_text(base + "_spectrum.dat", dat, written);
        } else if (op == "decay" && body.contains("max_by_distance")) {
            std::string dat = file_header(rep) + "# distance max_kernel bound\n";
            const auto& vals = body["max_by_distance"];
            const double pref = body["bound_prefactor"].get<double>();
            const double rate = body["bound_rate"].get<double>();
            for (std::size_t i = 0; i < vals.size(); ++i)
                dat += std::to_string(i) + " " + g17(vals[i].get<double>()) + " " +
                       g17(pref * std::exp(-rate * static_cast<double>(i))) + "\n";
            write_text(base + "_decay.dat", dat, written);
        } else {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(body, "", rows);
            std::string dat = file_header(rep) + "# key value\n";
            for (const auto& [k, v] : rows) dat += k + " " + v + "\n";
            write_text(base + "_" + op + ".dat", dat, written);
        }
    }
    return written;
}

nlohmann::ordered_json run_density_scan(const std::vector<int>& sizes, double s, double gap_lo,
                                        double gap_hi) {
    if (sizes.empty()) throw parameter_error("run_density_scan: no sizes given");
    nlohmann::ordered_json per_size = nlohmann::ordered_json::array();
    std::vector<double> densities, coefficients;
    double sxy = 0.0, sxx = 0.0;
    for (int n : sizes) {
        if (n % 4 != 0)
            throw parameter_error("run_density_scan: sizes must be multiples of 4");
        TorusWindow w(n);
        Domain dom = resolve_domain("halftorus", n);
        const Eigen::MatrixXcd He = assemble_haldane_edge(s, dom, w).matrix;
        const Eigen::VectorXd evs = eigenvalues_only(He);
        const FillingReport fill = filling_radius(dom, w);
        const DensityReport rep =
            delta_density(evs, gap_lo, gap_hi, static_cast<double>(fill.radius));
        densities.push_back(rep.density);
        coefficients.push_back(rep.coefficient);
        const double x = std::log(static_cast<double>(fill.radius)) / fill.radius;
        sxy += rep.density * x;
        sxx += x * x;
        per_size.push_back({{"n", n},
                            {"filling_radius", fill.radius},
                            {"density", rep.density},
                            {"coefficient", rep.coefficient}});
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < densities.size(); ++i)
        decreasing = decreasing && densities[i] < densities[i - 1];
    nlohmann::ordered_json j;
    j["s"] = s;
    j["gap_lo"] = gap_lo;
    j["gap_hi"] = gap_hi;
    j["per_size"] = per_size;
    j["fit_coefficient"] = sxx > 0 ? sxy / sxx : 0.0;
    j["strictly_decreasing"] = decreasing;
    const auto [mn, mx] = std::minmax_element(coefficients.begin(), coefficients.end());
    j["coefficient_ratio"] = *mn > 0 ? *mx / *mn : 0.0;
    return j;
}

} // namespace chernlab
