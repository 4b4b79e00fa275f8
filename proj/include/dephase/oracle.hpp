#pragma once

// Exact evolution of a qubit (or two) coupled to a few discrete bath modes.
// Everything is dense: exponentials come from Hermitian eigendecompositions of
// the two sector Hamiltonians H^+ and H^-, which the pure-dephasing structure
// makes block diagonal.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "dephase/bathspec.hpp"
#include "dephase/control.hpp"
#include "dephase/witness.hpp"

namespace dephase::oracle {

using Matrix = Eigen::MatrixXcd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr std::size_t kMaxDimension = 8192;
inline constexpr std::size_t kMaxSpinModes = 4;
inline constexpr std::size_t kMaxBosonModes = 2;
inline constexpr int kMinFockCap = 8;

struct Sector {
    Eigen::VectorXd energy;
    Matrix vectors;

    Matrix propagator(double t) const;                 // e^{-i H t}
    Matrix boltzmann(double beta, double shift) const;  // e^{-beta (H - shift)}
};

struct ExactSystem {
    BathKind kind = BathKind::spin;
    std::vector<BathMode> modes;
    int fock_cap = 0;  // highest retained occupation per boson mode
    std::size_t bath_dim = 1;
    QubitParams qubit;
    Matrix h_plus;   // bath Hamiltonian in the |+> sector, including +omega0/2
    Matrix h_minus;  // same for |->
    Matrix h_bath;   // the uncoupled bath Hamiltonian
    std::array<Sector, 2> sectors;

    std::size_t dim() const { return 2 * bath_dim; }
    const Matrix& block(int s) const { return s == 0 ? h_plus : h_minus; }
    Matrix hamiltonian() const;  // full qubit (x) bath matrix
    Matrix qubit_sz() const;     // S_z (x) I
};

ExactSystem build_system(BathKind kind, const std::vector<BathMode>& modes, const QubitParams& q, int fock_cap = 30);

// The oracle prepares states from the measurement operators themselves rather
// than from the reduced u/w sums.
struct PovmElements {
    std::vector<Qubit2x2> elements;
};
using OraclePreparation = std::variant<Uncorrelated, PovmElements>;

// Density matrix split into qubit blocks rho^{ab}, a, b in {+, -}.
struct BlockState {
    std::array<std::array<Matrix, 2>, 2> blocks;

    Matrix dense() const;
    Qubit2x2 reduced() const;  // partial trace over the bath
    Matrix bath_marginal() const;
};

BlockState prepare_state(const ExactSystem& sys, const OraclePreparation& prep);

// Product of the marginals of rho.
BlockState product_of_marginals(const BlockState& rho);

// Lab-frame state at time t under free evolution.
BlockState evolve_state(const ExactSystem& sys, const BlockState& rho, double t);

// Tr_B <+|rho(t)|->, interaction picture. With a schedule, t must equal 2 n tau.
cplx evolve_coherence(const ExactSystem& sys, const BlockState& rho, double t,
                      const std::optional<PulseSchedule>& sched = std::nullopt);

// Free coherence on a time grid in O(d^2) per point after one basis change.
class FreeCoherence {
  public:
    FreeCoherence(const ExactSystem& sys, const BlockState& rho);
    cplx operator()(double t) const;

  private:
    Eigen::VectorXd e_plus_, e_minus_;
    Matrix weights_;
    double omega0_ = 0.0;
};

// 1/2 sum |eigenvalues| of a Hermitian difference.
double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const Qubit2x2& a, const Qubit2x2& b);

double wootters_concurrence(const Matrix4& rho);

// Two qubits with independent copies of sys's bath, prepared by projecting the
// global thermal state onto a Bell state or as Bell state (x) thermal baths.
// Basis order |++>, |+->, |-+>, |-->; interaction picture.
Matrix4 two_qubit_state(const ExactSystem& sys, BellState state, bool correlated, double t);

struct ExactWitnesses {
    double trace_distance = 0.0;          // D(rho_S(t), rho_bar_S(t))
    double initial_distance = 0.0;        // D(rho(0), rho_bar(0)) on the full space
    double concurrence = 0.0;
    cplx rho14{};
};

ExactWitnesses exact_witnesses(const ExactSystem& sys, const PovmElements& prep, double t, BellState state,
                               bool correlated);

}  // namespace dephase::oracle
