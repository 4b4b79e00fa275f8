#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dephase/oracle.hpp"
#include "dephase/scenario/config.hpp"

namespace dephase::scenario {

struct OracleCase {
    std::string name;
    BathKind kind = BathKind::spin;
    std::vector<BathMode> modes;
    QubitParams qubit{0.1, Beta::finite(2.0)};
    bool correlated = true;        // reference POVM, otherwise uncorrelated with coherence 1/2
    std::optional<int> pulse_pairs;  // pulsed at tau = t / (2 n)
    std::vector<double> times;
    int fock_cap = 30;
    bool witnesses = false;  // also compare trace distance and concurrence
};

struct Deviation {
    std::string scenario;
    std::string quantity;
    double max_abs = 0.0;
    int flagged = 0;  // grid points skipped because the analytic status was not ok
};

struct OracleReport {
    std::vector<Deviation> rows;
    double threshold = 1e-8;

    double worst() const;
    bool passed() const { return worst() <= threshold; }
    std::string table() const;
};

struct OracleCheckOptions {
    unsigned threads = 1;
    double threshold = 1e-8;
    bool corrupt = false;  // harness self-test: perturbs the analytic decoherence function
};

// 4-mode spin and 2-mode boson baths, free and pulsed, correlated and uncorrelated.
std::vector<OracleCase> default_suite();

// Randomized cases within the oracle caps; deterministic for a given seed.
std::vector<OracleCase> random_suite(std::uint64_t seed, int count, int points = 50);

// Builds the oracle cases implied by a discrete scenario; throws SizeError beyond the caps.
std::vector<OracleCase> cases_from_scenario(const Scenario& s, int points = 50);

OracleReport oracle_check(const std::vector<OracleCase>& cases, const OracleCheckOptions& opts = {});

}  // namespace dephase::scenario
