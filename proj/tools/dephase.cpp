// Command-line driver: scenario runs, figure presets, the crossover interval and
// the oracle comparison suite.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dephase/kernels.hpp"
#include "dephase/scenario/oracle_check.hpp"
#include "dephase/scenario/presets.hpp"
#include "dephase/scenario/runner.hpp"
#include "dephase/version.hpp"

namespace {

using namespace dephase;
using namespace dephase::scenario;

constexpr int kExitOracleFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitSize = 3;

struct Common {
    std::string out = "out";
    unsigned threads = 1;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    std::vector<std::string> overrides;
    bool print_config = false;

    RunOptions run_options() const { return {threads, tol_abs, tol_rel}; }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "Output directory")->capture_default_str();
    app->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    app->add_option("--tol-abs", c.tol_abs, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    app->add_option("--tol-rel", c.tol_rel, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    app->add_option("--set", c.overrides, "Override section.key=value in every scenario");
    app->add_flag("--print-config", c.print_config, "Print the resolved config and exit");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int run_and_report(const std::vector<Scenario>& scenarios, const Common& c, const std::string& label) {
    if (c.print_config) {
        for (const auto& s : scenarios) std::cout << to_config(s) << "\n";
        return 0;
    }
    const auto result = run_scenarios(scenarios, c.run_options(), c.out, label);
    for (const auto& f : result.files) std::cout << f.string() << "\n";
    std::cout << result.sidecar.string() << "\n";
    return 0;
}

// Scenario files report errors as file:line:column.
std::vector<Scenario> load(const std::string& path, const std::vector<std::string>& overrides) {
    const std::string text = read_file(path);
    try {
        return parse_config(text, overrides);
    } catch (const ParseError& e) {
        throw ParseError(0, 0, path + ":" + e.what());
    }
}

std::string stem(const std::string& path) {
    const auto s = std::filesystem::path(path).stem().string();
    return s.empty() ? "run" : s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dephasing of a qubit in boson and spin baths with correlated initial states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::string backend;
    app.add_option("--backend", backend, "Mode-sum kernel backend (scalar, avx2, neon)");

    Common run_opts;
    std::string run_config;
    auto* run = app.add_subcommand("run", "Evaluate the scenarios in a config file");
    run->add_option("config", run_config, "Config file")->required();
    add_common(run, run_opts);

    Common fig_opts;
    std::string fig_id;
    auto* fig = app.add_subcommand("fig", "Evaluate a figure preset (1, 2, 3a, 3b, 4)");
    fig->add_option("id", fig_id, "Preset id")->required()->check(CLI::IsMember(preset_ids()));
    add_common(fig, fig_opts);

    std::string beta_text = "2";
    double cutoff = 5.0;
    auto* star = app.add_subcommand("tau-star", "Asymptotic crossover pulse interval for an Ohmic boson bath");
    star->add_option("--beta", beta_text, "Inverse temperature, or inf")->capture_default_str();
    star->add_option("--cutoff", cutoff, "Ohmic cutoff frequency")->check(CLI::PositiveNumber)->capture_default_str();

    Common cross_opts;
    std::string cross_config;
    auto* cross = app.add_subcommand("crossover", "Crossover map of delta over (tau, n); defaults to preset 4");
    cross->add_option("config", cross_config, "Config file with pulse mode sweep");
    add_common(cross, cross_opts);

    std::string oracle_config;
    unsigned oracle_threads = 1;
    double threshold = 1e-8;
    bool corrupt = false;
    int random_count = 0;
    std::uint64_t seed = 1;
    auto* orc = app.add_subcommand("oracle-check", "Compare analytic results with exact evolution");
    orc->add_option("config", oracle_config, "Config file with a discrete spectrum");
    orc->add_option("--threads", oracle_threads, "Worker threads")->check(CLI::Range(1u, 256u));
    orc->add_option("--threshold", threshold, "Largest accepted deviation")->capture_default_str();
    orc->add_option("--random", random_count, "Add randomized cases")->check(CLI::NonNegativeNumber);
    orc->add_option("--seed", seed, "Seed for randomized cases")->capture_default_str();
    orc->add_flag("--corrupt", corrupt, "Perturb the analytic side (self-test)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (!backend.empty()) {
            const auto b = kernels::backend_from_string(backend);
            if (!b) throw ParseError(0, 0, "unknown backend '" + backend + "'");
            kernels::force_backend(*b);
        }
        if (*run) return run_and_report(load(run_config, run_opts.overrides), run_opts, stem(run_config));
        if (*fig) {
            return run_and_report(parse_config(preset_config(fig_id), fig_opts.overrides), fig_opts, "fig" + fig_id);
        }
        if (*star) {
            QubitParams q{0.1, Beta::infinite()};
            if (beta_text != "inf") {
                double b = 0.0;
                try {
                    std::size_t used = 0;
                    b = std::stod(beta_text, &used);
                    if (used != beta_text.size()) throw std::invalid_argument(beta_text);
                } catch (const std::logic_error&) {
                    std::cerr << "--beta: expected a number or inf\n";
                    return kExitParse;
                }
                q.beta = Beta::finite(b);
            }
            const double t = tau_star(build_ohmic(1.0, 1.0, cutoff, 1.0), q);
            std::printf("%.17g\n", t);
            return 0;
        }
        if (*cross) {
            std::vector<Scenario> scenarios;
            std::string label = "fig4";
            if (cross_config.empty()) {
                scenarios = parse_config(preset_config("4"), cross_opts.overrides);
            } else {
                scenarios = load(cross_config, cross_opts.overrides);
                label = stem(cross_config);
                for (auto& s : scenarios) {
                    if (s.pulses.mode != PulseMode::sweep) {
                        throw ParseError(0, 0, "scenario '" + s.name + "' needs [pulses] mode = sweep");
                    }
                    s.outputs = {Quantity::crossover_map};
                    if (std::holds_alternative<OhmicContinuum>(s.spectrum)) s.outputs.push_back(Quantity::tau_star);
                }
            }
            return run_and_report(scenarios, cross_opts, label);
        }
        if (*orc) {
            std::vector<OracleCase> cases;
            if (oracle_config.empty()) {
                cases = default_suite();
            } else {
                for (const auto& s : load(oracle_config, {})) {
                    auto more = cases_from_scenario(s);
                    cases.insert(cases.end(), more.begin(), more.end());
                }
            }
            if (random_count > 0) {
                auto more = random_suite(seed, random_count);
                cases.insert(cases.end(), more.begin(), more.end());
            }
            const auto report = oracle_check(cases, {oracle_threads, threshold, corrupt});
            std::cout << report.table();
            std::cout << "worst deviation " << format_double(report.worst()) << (report.passed() ? " pass" : " FAIL")
                      << "\n";
            return report.passed() ? 0 : kExitOracleFailure;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SizeError& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return kExitSize;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
