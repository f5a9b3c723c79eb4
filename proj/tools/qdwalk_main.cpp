// qdwalk CLI: batch experiment driver over the C API.
//
// Subcommands mirror the library drivers (fusion, walk, coset, hecke); a
// run writes its output files plus a JSON manifest into --out and prints
// one line per check. Exit code 0 when all checks pass, 1 on a check
// failure, 2 on a usage error. All randomness flows from --seed.

#include "qdwalk/qdwalk_c.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

// Flat key=value or JSON config file; CLI flags override its entries.
json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json parsed = json::parse(text, nullptr, false);
        if (parsed.is_discarded())
            throw CLI::ValidationError("--config", "invalid JSON in " + path);
        return parsed;
    }
    json out = json::object();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (value == "true" || value == "false") {
            out[key] = value == "true";
        } else {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(value, &used);
                if (used == value.size())
                    out[key] = v;
                else
                    out[key] = value;
            } catch (const std::exception&) {
                out[key] = value;
            }
        }
    }
    return out;
}

int write_outputs(qdw_run* run, const std::string& out_dir, bool quiet) {
    std::filesystem::create_directories(out_dir);
    size_t count = 0;
    if (qdw_run_file_count(run, &count) != QDW_OK) return 2;
    for (size_t i = 0; i < count; ++i) {
        const char* name = nullptr;
        const char* data = nullptr;
        size_t size = 0;
        if (qdw_run_file_name(run, i, &name) != QDW_OK ||
            qdw_run_file_content(run, i, &data, &size) != QDW_OK)
            return 2;
        const std::filesystem::path path = std::filesystem::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out.write(data, static_cast<std::streamsize>(size));
        if (!quiet) std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

void print_checks(qdw_run* run) {
    const json manifest = json::parse(qdw_run_manifest(run));
    for (const auto& r : manifest.at("results")) {
        std::cout << (r.at("passed").get<bool>() ? "[PASS] " : "[FAIL] ")
                  << r.at("name").get<std::string>();
        if (r.contains("detail"))
            std::cout << ": " << r.at("detail").get<std::string>();
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdwalk: q-deformed fusion rules, central random walks, the "
                 "SU_q(2) double-coset chain and Hecke-algebra checks"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_path, out_dir = ".", format = "csv";
    std::string q_text, levy, variant = "all";
    int n = 0, ball = 0, depth = 0, steps = 0, paths = 0, sites = 0, p2s = 0;
    int escape_threshold = 50;
    double escape_min = -1.0, convergence_min = -1.0;
    std::uint64_t seed = 0;
    bool asymptotics = false, quiet = false;

    app.add_option("--config", config_path, "config file (JSON or key=value)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--quiet", quiet, "suppress per-file log lines");

    auto* fusion = app.add_subcommand("fusion", "fusion tables, m0 and the multiplicity bound");
    fusion->add_option("--n", n, "rank of SU(n)");
    fusion->add_option("--ball", ball, "weight ball radius |lambda| <= ball");
    fusion->add_option("--q", q_text, "deformation parameter (p/r exact, decimal float)");

    auto* walk = app.add_subcommand("walk", "central random walk experiments");
    walk->add_option("--n", n, "rank of SU(n)");
    walk->add_option("--ball", ball, "kernel truncation radius");
    walk->add_option("--q", q_text, "deformation parameter");
    walk->add_option("--levy", levy, "weight:mass list, e.g. '1:1' or '1,0:1/2;0:1/2'");
    walk->add_option("--steps", steps, "path length / distribution steps");
    walk->add_option("--paths", paths, "Monte-Carlo path count");
    walk->add_option("--seed", seed, "RNG seed (single source of randomness)");
    walk->add_option("--escape-threshold", escape_threshold,
                     "final |lambda| counted as escaped");
    walk->add_option("--escape-min", escape_min,
                     "gate: required escaped fraction");

    auto* coset = app.add_subcommand("coset", "SU_q(2) double-coset chain");
    coset->add_option("--q", q_text, "deformation parameter");
    coset->add_option("--K", depth, "grid truncation depth");
    coset->add_option("--steps", steps, "dual steps for the measure experiment");
    coset->add_option("--p2s", p2s, "verify p_{2s} identity up to this twice-spin");
    coset->add_flag("--asymptotics", asymptotics, "a_k ~ k q^k C table (float mode)");
    coset->add_option("--convergence-min", convergence_min,
                      "gate: required 1 - nu_n(t) after the last step");

    auto* hecke = app.add_subcommand("hecke", "Hecke relation and dichotomy checks");
    hecke->add_option("--n", n, "site dimension");
    hecke->add_option("--m", sites, "chain length");
    hecke->add_option("--q", q_text, "deformation parameter");
    hecke->add_option("--variant", variant, "pi, pi_plus, pi_minus or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    json config = json::object();
    try {
        if (!config_path.empty()) config = load_config_file(config_path);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    // Flags override the config file.
    config["subcommand"] = app.get_subcommands().front()->get_name();
    const auto set_if = [&config](const char* key, auto value, bool provided) {
        if (provided || !config.contains(key)) config[key] = value;
    };
    set_if("q", q_text, !q_text.empty());
    set_if("format", format, format != "csv");
    if (fusion->parsed() || walk->parsed() || hecke->parsed())
        set_if("n", n, n != 0);
    if (fusion->parsed() || walk->parsed()) set_if("ball", ball, ball != 0);
    if (walk->parsed()) {
        set_if("levy", levy, !levy.empty());
        set_if("steps", steps, steps != 0);
        set_if("paths", paths, paths != 0);
        set_if("seed", seed, seed != 0);
        set_if("escape_threshold", escape_threshold, escape_threshold != 50);
        if (escape_min >= 0) config["escape_min_fraction"] = escape_min;
    }
    if (coset->parsed()) {
        set_if("K", depth, depth != 0);
        set_if("steps", steps, steps != 0);
        set_if("p2s", p2s, p2s != 0);
        set_if("asymptotics", asymptotics, asymptotics);
        if (convergence_min >= 0) config["convergence_min"] = convergence_min;
    }
    if (hecke->parsed()) {
        set_if("m", sites, sites != 0);
        set_if("variant", variant, variant != "all");
    }

    qdw_run* run = nullptr;
    const int rc = qdw_run_create(config.dump().c_str(), &run);
    if (rc != QDW_OK) {
        std::cerr << "error: " << qdw_last_error() << "\n";
        return rc == QDW_ERR_USAGE || rc == QDW_ERR_DOMAIN ? 2 : 1;
    }

    print_checks(run);
    const int write_rc = write_outputs(run, out_dir, quiet);
    const int passed = qdw_run_passed(run);
    qdw_run_destroy(run);
    if (write_rc != 0) return write_rc;
    return passed ? 0 : 1;
}
