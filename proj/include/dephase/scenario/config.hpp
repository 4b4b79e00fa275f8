#pragma once

// Declarative scenario description and its text format.
//
// A config is a sequence of sections holding `key = value` lines; `#` starts a
// comment. Each `[scenario]` header begins a new scenario and the sections that
// follow it belong to that scenario:
//
//   [scenario]   name, kind = boson|spin, outputs = coherence, gamma, ...,
//                normalize, lab_frame
//   [spectrum]   type = ohmic|discrete; ohmic: lambda, n0, cutoff, g;
//                discrete: modes = omega:g, omega:g, ...
//   [qubit]      omega0, beta (a number or `inf`)
//   [preparation] type = uncorrelated|povm; coherence = re[+imi];
//                povm = reference, or one `element = a, b; c, d` line per E_m
//   [time]       t_min, t_max, points
//   [pulses]     mode = none|interval|total|sweep; tau; t_total; n_min, n_max;
//                tau_min, tau_max, tau_points, n_step
//   [concurrence] state = psi|phi
//   [tolerance]  abs, rel

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dephase/control.hpp"
#include "dephase/witness.hpp"

namespace dephase::scenario {

class ParseError : public Error {
  public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_, column_;
};

enum class Quantity { coherence, gamma, theta, delta, trace_distance, concurrence, crossover_map, tau_star };

std::string_view to_string(Quantity q);
std::optional<Quantity> quantity_from_string(std::string_view s);

struct TimeGrid {
    double t_min = 0.0;
    double t_max = 5.0;
    int points = 101;

    std::vector<double> values() const;
};

// How pulse schedules are attached to a scenario.
enum class PulseMode {
    none,      // free evolution on the time grid
    interval,  // fixed tau, t = 2 n tau for n in [n_min, n_max]
    total,     // fixed t_total, tau = t_total / (2 n) for n in [n_min, n_max]
    sweep,     // tau grid x n grid (crossover maps); other quantities use (tau_i, n_j) cells
};

struct Pulses {
    PulseMode mode = PulseMode::none;
    double tau = 0.15;
    double t_total = 2.0;
    int n_min = 1;
    int n_max = 1;
    int n_step = 1;
    double tau_min = 0.05;
    double tau_max = 0.5;
    int tau_points = 46;

    std::vector<int> n_values() const;
    std::vector<double> tau_values() const;
    std::vector<PulseSchedule> schedules() const;  // interval and total modes
};

struct Scenario {
    std::string name = "scenario";
    BathKind kind = BathKind::boson;
    SpectralModel spectrum = OhmicContinuum{1.0, 2.5e3, 5.0, 0.02};
    QubitParams qubit{0.1, Beta::finite(2.0)};
    std::vector<Qubit2x2> povm;  // empty: uncorrelated
    cplx initial_coherence{0.5, 0.0};
    TimeGrid time;
    Pulses pulses;
    BellState bell = BellState::psi;
    std::vector<Quantity> outputs{Quantity::coherence};
    bool normalize = false;  // divide coherence traces by their initial value
    bool lab_frame = false;
    QuadratureOptions tolerance{};

    bool correlated() const { return !povm.empty(); }
    Preparation preparation() const;
};

// Parses every scenario in the text; throws ParseError with a 1-based position.
std::vector<Scenario> parse_config(std::string_view text);

// `section.key=value` assignments applied to every scenario after parsing.
std::vector<Scenario> parse_config(std::string_view text, const std::vector<std::string>& overrides);

// Canonical config text with every field explicit; parse_config inverts it.
std::string to_config(const Scenario& s);

std::string format_double(double v);

}  // namespace dephase::scenario
