#pragma once

// Batched per-mode summands for the decoherence, phase and memory functions.
//
// Every bath quantity in this library is a weighted sum over modes,
//   S = sum_j weight_j * h(omega_j, g_j),
// where a discrete bath uses weight 1 and a continuum uses quadrature weights
// times the mode density. The summands h come in four families; each family
// evaluates all of its accumulators in a single pass.
//
// A scalar reference implementation is always built. Vectorized variants
// (AVX2+FMA on x86-64, NEON on aarch64) are compiled from the same templated
// source and selected at runtime.

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dephase::kernels {

enum class Family {
    boson_free,    // gamma = g^2 coth(beta w/2)(1-cos wt)/w^2, theta = g^2 sin(wt)/w^2
    spin_free,     // gamma = -ln(1-2a sin^2(Wt/2)), theta = atan(eta), log = ln(1+eta^2)/2
    boson_pulsed,  // gamma = g^2 coth tan^2(w tau/2)(1-cos wt)/w^2, theta = g^2 tan(w tau/2)(1-cos wt)/w^2
    spin_pulsed,   // gamma = -ln(1-8F^2), theta = atan(eta_pi), log = ln(1+eta_pi^2)/2
};

struct Args {
    double t = 0.0;           // evaluation time (free families); 2 n tau for pulsed families
    double tau = 0.0;         // pulse interval
    int n = 1;                // pulse-pair count
    double beta = 1.0;        // ignored when zero_temperature
    bool zero_temperature = false;
};

struct ModeSums {
    double gamma = 0.0;
    double theta = 0.0;
    double log_factor = 0.0;
    // Smallest coherence-factor argument seen (1 - 2a sin^2 or 1 - 8F^2).
    double min_argument = std::numeric_limits<double>::infinity();
    // Smallest |denominator| of the pulsed spin memory factor.
    double min_denominator = std::numeric_limits<double>::infinity();

    void merge(const ModeSums& o);
};

struct ModeBatch {
    std::span<const double> omega;
    std::span<const double> weight;
    std::span<const double> coupling;
};

enum class Backend { scalar, avx2, neon };

std::string_view to_string(Backend b);
std::optional<Backend> backend_from_string(std::string_view s);

// Backends compiled into this binary that the running CPU supports.
std::vector<Backend> available_backends();

// Backend used when none is requested explicitly: the widest available,
// unless overridden by force_backend() or the DEPHASE_BACKEND environment variable.
Backend active_backend();
void force_backend(std::optional<Backend> b);

ModeSums accumulate(Family f, const Args& args, const ModeBatch& batch);
ModeSums accumulate(Family f, const Args& args, const ModeBatch& batch, Backend b);

// Single-mode evaluation through the scalar reference path.
ModeSums summand(Family f, const Args& args, double omega, double g);

}  // namespace dephase::kernels
