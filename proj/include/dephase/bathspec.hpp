#pragma once

#include <array>
#include <complex>
#include <limits>
#include <variant>
#include <vector>

#include "dephase/status.hpp"

namespace dephase {

using cplx = std::complex<double>;

struct BathMode {
    double omega = 1.0;  // > 0
    double g = 0.0;      // >= 0
};

struct DiscreteSpectrum {
    std::vector<BathMode> modes;
};

// Continuum of equally coupled modes with number density
// N(omega) = lambda * n0 * omega * exp(-omega / cutoff).
struct OhmicContinuum {
    double lambda = 1.0;
    double n0 = 1.0;
    double cutoff = 1.0;
    double g = 0.0;

    double density(double omega) const;
};

using SpectralModel = std::variant<DiscreteSpectrum, OhmicContinuum>;

enum class BathKind { boson, spin };

// Exponent of the memory product: 0 for bosons, 1 for spins.
constexpr int memory_exponent(BathKind k) { return k == BathKind::spin ? 1 : 0; }

// Inverse temperature; zero temperature is a distinguished value, never a large float.
class Beta {
  public:
    static Beta finite(double beta);
    static Beta infinite() { return Beta{}; }

    bool is_infinite() const { return infinite_; }
    double value() const;  // throws for infinite

    friend bool operator==(const Beta&, const Beta&) = default;

  private:
    Beta() = default;
    double beta_ = 0.0;
    bool infinite_ = true;
};

struct QubitParams {
    double omega0 = 1.0;
    Beta beta = Beta::infinite();
};

struct Uncorrelated {
    cplx initial_coherence{0.5, 0.0};
};

// Sums of POVM matrix elements in the {|+>, |->} basis.
struct PovmCorrelated {
    double u_plus = 0.0;
    double u_minus = 0.0;
    cplx w_plus{};
    cplx w_minus{};
};

using Preparation = std::variant<Uncorrelated, PovmCorrelated>;

// 2x2 operator in the {|+>, |->} basis, row-major.
using Qubit2x2 = std::array<std::array<cplx, 2>, 2>;

struct WeightFactors {
    cplx w;        // W
    double w_u;    // W_u
    cplx rho0;     // initial coherence rho^{+-}(0)
};

void validate(const BathMode& m);
void validate(const SpectralModel& spec);
void validate(const QubitParams& q);

SpectralModel build_ohmic(double lambda, double n0, double cutoff, double g);

// The POVM used throughout the numerical study: E = I + (sigma_x + sigma_z) / 2.
Qubit2x2 reference_povm_element();

Preparation preparation_from_povm(const std::vector<Qubit2x2>& elements);

WeightFactors weight_factors(const Preparation& prep, const QubitParams& q);

// Thermal sector weights (e^{-beta w0/2}, e^{+beta w0/2}) rescaled so the larger is 1.
std::array<double, 2> sector_weights(const QubitParams& q);

}  // namespace dephase
