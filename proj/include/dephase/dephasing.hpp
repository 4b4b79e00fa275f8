#pragma once

#include <optional>

#include "dephase/bathspec.hpp"
#include "dephase/quadrature.hpp"

namespace dephase {

// The triple from which every coherence value is assembled:
// rho(t) = rho(0) e^{-gamma} [cos theta + i W sin theta] e^{log_factor}.
struct DephasingState {
    double gamma = 0.0;
    double theta = 0.0;
    double log_factor = 0.0;  // (s/2) sum_k ln(1 + eta_k^2); zero for bosons
};

struct SpinMemory {
    double theta = 0.0;
    double log_factor = 0.0;
};

double gamma_boson(double t, const SpectralModel& spec, const QubitParams& q, const QuadratureOptions& opts = {});

// Temperature independent; there is deliberately no QubitParams argument.
Outcome<double> gamma_spin(double t, const SpectralModel& spec, const QuadratureOptions& opts = {});

double theta_boson(double t, const SpectralModel& spec, const QuadratureOptions& opts = {});

Outcome<double> eta_spin(double omega, double g, double t, const QubitParams& q);

Outcome<SpinMemory> theta_and_logfactor_spin(double t, const SpectralModel& spec, const QubitParams& q,
                                             const QuadratureOptions& opts = {});

Outcome<DephasingState> dephasing_state(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                                        const QuadratureOptions& opts = {});

// Interaction-picture coherence rho^{+-}(t); complete dephasing gives exactly 0 with the flag set.
Outcome<cplx> coherence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                        const Preparation& prep, const QuadratureOptions& opts = {});

// Correlated states use W and the phase; uncorrelated ones only e^{-gamma}.
cplx assemble_coherence(const DephasingState& state, BathKind kind, const Preparation& prep, const QubitParams& q);

cplx initial_coherence(const Preparation& prep, const QubitParams& q);

// Decoherence function from the second-order time-convolutionless master equation.
double gamma_second_order(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                          const QuadratureOptions& opts = {});

// Earliest time at which some spin mode's coherence factor reaches zero
// (requires g_k >= omega_k); none if no mode can dephase completely.
std::optional<double> spin_dephasing_onset(const SpectralModel& spec);

// Restores the bare qubit rotation e^{-i omega0 t}.
cplx to_lab_frame(cplx interaction, double t, double omega0);

}  // namespace dephase
