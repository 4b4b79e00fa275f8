#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dephase/dephasing.hpp"

namespace dephase {

// Ideal bang-bang control: pi pulses along x every tau, evaluated at t = 2 n tau.
struct PulseSchedule {
    double tau = 0.1;
    int n = 1;

    static PulseSchedule make(double tau, int n);
    double total_time() const { return 2.0 * n * tau; }
};

struct PulsedSpinTerm {
    double x = 1.0;
    double y = 0.0;
    double phi = 0.0;        // arccos(x) in [0, pi]
    double f = 0.0;          // F_k
    double omega_cap = 0.0;  // renormalized frequency
};

PulsedSpinTerm pulsed_spin_term(const BathMode& mode, const PulseSchedule& sched);

// sin(n phi) / sin(phi), finite at phi = 0 and pi.
double chebyshev_ratio(double phi, int n);

double gamma_boson_pulsed(const PulseSchedule& sched, const SpectralModel& spec, const QubitParams& q,
                          const QuadratureOptions& opts = {});

Outcome<double> gamma_spin_pulsed(const PulseSchedule& sched, const SpectralModel& spec,
                                  const QuadratureOptions& opts = {});

double theta_boson_pulsed(const PulseSchedule& sched, const SpectralModel& spec, const QuadratureOptions& opts = {});

Outcome<double> eta_spin_pulsed(const BathMode& mode, const PulseSchedule& sched, const QubitParams& q);

Outcome<DephasingState> pulsed_state(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                                     const QubitParams& q, const QuadratureOptions& opts = {});

Outcome<cplx> coherence_pulsed(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                               const QubitParams& q, const Preparation& prep, const QuadratureOptions& opts = {});

// delta = |pulsed coherence| / |free coherence| at t = 2 n tau; delta > 1 means the pulses
// suppress decoherence.
Outcome<double> delta_ratio(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                            const QubitParams& q, const Preparation& prep, const QuadratureOptions& opts = {});

// kappa_beta(omega) = g^2 N(omega) coth(beta omega / 2); finite limit at omega = 0.
double kappa(const OhmicContinuum& bath, const QubitParams& q, double omega);

// Asymptotic crossover interval from (4/pi) kappa(pi/tau) = (pi/2) kappa(0).
// Exactly 0 at zero temperature; throws NoCrossover if no root exists in (1e-4, 10].
double tau_star(const SpectralModel& spec, const QubitParams& q);

enum class Regime { suppression, enhancement, undefined };

struct CrossoverCell {
    double tau = 0.0;
    int n = 0;
    double t = 0.0;
    double delta = 0.0;
    Regime regime = Regime::undefined;
    Status status = Status::ok;
};

struct CrossoverAnalysis {
    std::vector<double> tau_grid;
    std::vector<int> n_grid;
    std::vector<CrossoverCell> cells;             // n-major: cells[i_n * tau_grid.size() + i_tau]
    std::vector<std::optional<double>> crossing;  // per n: first tau where delta crosses 1
    std::optional<double> tau_star;               // Ohmic spectra only
    std::optional<double> kappa0;

    const CrossoverCell& at(std::size_t i_tau, std::size_t i_n) const {
        return cells[i_n * tau_grid.size() + i_tau];
    }
};

struct CrossoverOptions {
    unsigned threads = 1;
    QuadratureOptions quadrature{};
};

CrossoverAnalysis crossover_map(std::span<const double> tau_grid, std::span<const int> n_grid, BathKind kind,
                                const SpectralModel& spec, const QubitParams& q, const Preparation& prep,
                                const CrossoverOptions& opts = {});

// First tau at which ln(delta) changes sign along the given row, by linear interpolation.
std::optional<double> first_crossing(std::span<const double> tau, std::span<const CrossoverCell> row);

}  // namespace dephase
