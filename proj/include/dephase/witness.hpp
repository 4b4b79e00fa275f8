#pragma once

#include "dephase/dephasing.hpp"

namespace dephase {

enum class BellState {
    psi,  // (|++> + |-->)/sqrt(2)
    phi,  // (|+-> + |-+>)/sqrt(2)
};

struct WitnessResult {
    double trace_distance = 0.0;
    double concurrence = 0.0;
    cplx rho14{};  // the X-state coherence: <++|rho|--> for psi, <+-|rho|-+> for phi
    double w_e = 0.0;
    Status status = Status::ok;
};

// D(rho_S(t), rho_bar_S(t)) where rho_bar(0) is the product of the marginals of rho(0).
Outcome<double> trace_distance(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                               const PovmCorrelated& prep, const QuadratureOptions& opts = {});

// W_e = -tanh(beta omega0); -1 at zero temperature.
double concurrence_weight(const QubitParams& q);

// Two qubits, each coupled to its own copy of the bath, prepared by projecting the
// global thermal state onto a Bell state (correlated) or as Bell state x thermal baths.
Outcome<cplx> bell_coherence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                             BellState state, bool correlated, const QuadratureOptions& opts = {});

Outcome<double> concurrence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                            BellState state, bool correlated, const QuadratureOptions& opts = {});

WitnessResult witnesses(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                        const PovmCorrelated& prep, BellState state, bool correlated,
                        const QuadratureOptions& opts = {});

}  // namespace dephase
