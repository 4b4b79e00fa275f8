#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dephase/scenario/config.hpp"

namespace dephase::scenario {

struct Table {
    std::string file;  // <scenario>.<quantity>.csv
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const;
};

struct RunOptions {
    unsigned threads = 1;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
};

// Evaluates every requested quantity of one scenario. Rows come out in grid order
// regardless of the thread count.
std::vector<Table> evaluate(const Scenario& s, const RunOptions& opts = {});

struct RunResult {
    std::vector<std::filesystem::path> files;
    std::filesystem::path sidecar;
};

// Writes one CSV per table and a JSON sidecar `<label>.json` describing the run.
RunResult run_scenarios(const std::vector<Scenario>& scenarios, const RunOptions& opts,
                        const std::filesystem::path& out_dir, const std::string& label);

std::string sidecar_json(const std::vector<Scenario>& scenarios, const std::vector<std::vector<Table>>& tables,
                         const RunOptions& opts);

}  // namespace dephase::scenario
