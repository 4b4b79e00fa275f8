#pragma once

#include <cstddef>

#include "dephase/bathspec.hpp"
#include "dephase/kernels.hpp"

namespace dephase {

// Smallest coherence-factor argument treated as nonzero in a continuum;
// discrete modes use exactly zero. Refinement stops once a node falls below it,
// since the result is then reported as complete dephasing.
inline constexpr double kContinuumDephasingFloor = 1e-12;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_panels = 400000;
};

// Upper integration limit for an Ohmic continuum: exp(-omega/cutoff) < 5e-18 beyond it.
double integration_limit(const OhmicContinuum& bath);

// Adaptive Gauss-Legendre integration of a summand family against the Ohmic
// mode density on (0, integration_limit). Panels start at most one oscillation
// period wide and are split at the family's resonance frequencies.
kernels::ModeSums integrate_ohmic(kernels::Family family, const kernels::Args& args,
                                  const OhmicContinuum& bath, const QuadratureOptions& opts = {});

kernels::ModeSums sum_modes(kernels::Family family, const kernels::Args& args, const DiscreteSpectrum& bath);

kernels::ModeSums mode_sums(kernels::Family family, const kernels::Args& args, const SpectralModel& spec,
                            const QuadratureOptions& opts = {});

}  // namespace dephase
