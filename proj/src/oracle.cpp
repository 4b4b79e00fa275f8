#include "dephase/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dephase::oracle {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// op acting on factor k of a tensor product with the given local dimensions.
Matrix embed(const Matrix& op, std::size_t k, const std::vector<Eigen::Index>& dims) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t j = 0; j < dims.size(); ++j) {
        out = kron(out, j == k ? op : Matrix::Identity(dims[j], dims[j]));
    }
    return out;
}

Sector diagonalize(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

double level_tolerance(double level) { return 1e-9 * std::max(1.0, std::abs(level)); }

Matrix ground_projector(const Sector& s, double level) {
    const double tol = level_tolerance(level);
    Matrix p = Matrix::Zero(s.vectors.rows(), s.vectors.rows());
    for (Eigen::Index i = 0; i < s.energy.size(); ++i) {
        if (s.energy(i) <= level + tol) p += s.vectors.col(i) * s.vectors.col(i).adjoint();
    }
    return p;
}

// Unnormalized e^{-beta H_B} for the uncoupled bath, which is diagonal in the product basis.
Matrix bath_thermal(const ExactSystem& sys) {
    const Eigen::VectorXd e = sys.h_bath.diagonal().real();
    const double lo = e.minCoeff();
    Eigen::VectorXd p(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) {
        if (sys.qubit.beta.is_infinite()) {
            p(i) = e(i) <= lo + level_tolerance(lo) ? 1.0 : 0.0;
        } else {
            p(i) = std::exp(-sys.qubit.beta.value() * (e(i) - lo));
        }
    }
    p /= p.sum();
    return p.cast<cplx>().asDiagonal();
}

// Sector Boltzmann operators with a common normalization, restricted to sectors
// the preparation keeps. At zero temperature only the lowest surviving level remains.
std::array<Matrix, 2> sector_thermal(const ExactSystem& sys, const std::array<bool, 2>& keep) {
    double lo = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 2; ++s) {
        if (keep[s]) lo = std::min(lo, sys.sectors[s].energy.minCoeff());
    }
    std::array<Matrix, 2> g;
    for (int s = 0; s < 2; ++s) {
        const auto d = static_cast<Eigen::Index>(sys.bath_dim);
        if (!keep[s]) {
            g[s] = Matrix::Zero(d, d);
        } else if (sys.qubit.beta.is_infinite()) {
            g[s] = ground_projector(sys.sectors[s], lo);
        } else {
            g[s] = sys.sectors[s].boltzmann(sys.qubit.beta.value(), lo);
        }
    }
    return g;
}

Matrix to_matrix(const Qubit2x2& m) {
    Matrix out(2, 2);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out(a, b) = m[a][b];
    }
    return out;
}

}  // namespace

Matrix Sector::propagator(double t) const {
    Eigen::VectorXcd phase(energy.size());
    for (Eigen::Index i = 0; i < energy.size(); ++i) phase(i) = std::polar(1.0, -energy(i) * t);
    return vectors * phase.asDiagonal() * vectors.adjoint();
}

Matrix Sector::boltzmann(double beta, double shift) const {
    Eigen::VectorXcd w(energy.size());
    for (Eigen::Index i = 0; i < energy.size(); ++i) w(i) = std::exp(-beta * (energy(i) - shift));
    return vectors * w.asDiagonal() * vectors.adjoint();
}

Matrix ExactSystem::hamiltonian() const {
    const auto d = static_cast<Eigen::Index>(bath_dim);
    Matrix h = Matrix::Zero(2 * d, 2 * d);
    h.topLeftCorner(d, d) = h_plus;
    h.bottomRightCorner(d, d) = h_minus;
    return h;
}

Matrix ExactSystem::qubit_sz() const {
    const auto d = static_cast<Eigen::Index>(bath_dim);
    Matrix sz = Matrix::Zero(2 * d, 2 * d);
    sz.topLeftCorner(d, d).setIdentity();
    sz.bottomRightCorner(d, d) = -Matrix::Identity(d, d);
    return 0.5 * sz;
}

ExactSystem build_system(BathKind kind, const std::vector<BathMode>& modes, const QubitParams& q, int fock_cap) {
    validate(q);
    for (const auto& m : modes) validate(m);
    const std::size_t cap = kind == BathKind::spin ? kMaxSpinModes : kMaxBosonModes;
    if (modes.size() > cap) throw SizeError("too many modes for the exact oracle");
    if (kind == BathKind::boson && fock_cap < kMinFockCap) throw InvalidParameter("fock_cap must be >= 8");

    const Eigen::Index local = kind == BathKind::spin ? 2 : fock_cap + 1;
    std::size_t bath_dim = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        bath_dim *= static_cast<std::size_t>(local);
        if (2 * bath_dim > kMaxDimension) throw SizeError("exact oracle dimension exceeds 8192");
    }

    Matrix number, field;  // single-mode H_B term and coupling operator (times 2)
    if (kind == BathKind::spin) {
        number = Matrix::Zero(2, 2);
        number(0, 0) = 0.5;
        number(1, 1) = -0.5;
        field = Matrix::Zero(2, 2);
        field(0, 1) = field(1, 0) = 1.0;
    } else {
        number = Matrix::Zero(local, local);
        field = Matrix::Zero(local, local);
        for (Eigen::Index n = 0; n < local; ++n) {
            number(n, n) = double(n);
            if (n + 1 < local) field(n, n + 1) = field(n + 1, n) = std::sqrt(double(n + 1));
        }
    }

    ExactSystem sys;
    sys.kind = kind;
    sys.modes = modes;
    sys.fock_cap = kind == BathKind::boson ? fock_cap : 0;
    sys.bath_dim = bath_dim;
    sys.qubit = q;
    const auto d = static_cast<Eigen::Index>(bath_dim);
    const std::vector<Eigen::Index> dims(modes.size(), local);
    sys.h_bath = Matrix::Zero(d, d);
    Matrix coupling = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < modes.size(); ++k) {
        sys.h_bath += modes[k].omega * embed(number, k, dims);
        coupling += 0.5 * modes[k].g * embed(field, k, dims);
    }
    const Matrix offset = 0.5 * q.omega0 * Matrix::Identity(d, d);
    sys.h_plus = offset + sys.h_bath + coupling;
    sys.h_minus = -offset + sys.h_bath - coupling;
    sys.sectors = {diagonalize(sys.h_plus), diagonalize(sys.h_minus)};
    return sys;
}

Matrix BlockState::dense() const {
    const auto d = blocks[0][0].rows();
    Matrix out(2 * d, 2 * d);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out.block(a * d, b * d, d, d) = blocks[a][b];
    }
    return out;
}

Qubit2x2 BlockState::reduced() const {
    Qubit2x2 out{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out[a][b] = blocks[a][b].trace();
    }
    return out;
}

Matrix BlockState::bath_marginal() const { return blocks[0][0] + blocks[1][1]; }

BlockState prepare_state(const ExactSystem& sys, const OraclePreparation& prep) {
    BlockState rho;
    if (const auto* u = std::get_if<Uncorrelated>(&prep)) {
        const Matrix bath = bath_thermal(sys);
        rho.blocks[0][0] = 0.5 * bath;
        rho.blocks[1][1] = 0.5 * bath;
        rho.blocks[0][1] = u->initial_coherence * bath;
        rho.blocks[1][0] = std::conj(u->initial_coherence) * bath;
        return rho;
    }
    const auto& elements = std::get<PovmElements>(prep).elements;
    if (elements.empty()) throw DegeneratePreparation("POVM has no elements");
    // m[a][b][s] = sum_m E_m[a][s] conj(E_m[b][s])
    cplx m[2][2][2] = {};
    for (const auto& e : elements) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int s = 0; s < 2; ++s) m[a][b][s] += e[a][s] * std::conj(e[b][s]);
            }
        }
    }
    std::array<bool, 2> keep{};
    for (int s = 0; s < 2; ++s) keep[s] = std::abs(m[0][0][s]) + std::abs(m[1][1][s]) > 0.0;
    if (!keep[0] && !keep[1]) throw DegeneratePreparation("POVM annihilates the thermal state");
    const auto g = sector_thermal(sys, keep);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) rho.blocks[a][b] = m[a][b][0] * g[0] + m[a][b][1] * g[1];
    }
    const cplx norm = rho.blocks[0][0].trace() + rho.blocks[1][1].trace();
    if (std::abs(norm) == 0.0) throw DegeneratePreparation("prepared state has zero trace");
    for (auto& row : rho.blocks) {
        for (auto& blk : row) blk /= norm;
    }
    return rho;
}

BlockState product_of_marginals(const BlockState& rho) {
    const auto rs = rho.reduced();
    const Matrix bath = rho.bath_marginal();
    BlockState out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out.blocks[a][b] = rs[a][b] * bath;
    }
    return out;
}

BlockState evolve_state(const ExactSystem& sys, const BlockState& rho, double t) {
    const std::array<Matrix, 2> u = {sys.sectors[0].propagator(t), sys.sectors[1].propagator(t)};
    BlockState out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) out.blocks[a][b] = u[a] * rho.blocks[a][b] * u[b].adjoint();
    }
    return out;
}

cplx evolve_coherence(const ExactSystem& sys, const BlockState& rho, double t,
                      const std::optional<PulseSchedule>& sched) {
    if (!(t >= 0.0)) throw InvalidParameter("time must be >= 0");
    if (t == 0.0) return rho.blocks[0][1].trace();
    if (!sched) {
        const Matrix up = sys.sectors[0].propagator(t);
        const Matrix um = sys.sectors[1].propagator(t);
        return (up * rho.blocks[0][1] * um.adjoint()).trace() * std::polar(1.0, sys.qubit.omega0 * t);
    }
    if (std::abs(sched->total_time() - t) > 1e-12 * std::max(1.0, t)) {
        throw InvalidParameter("pulsed evolution needs t = 2 n tau");
    }
    const std::array<Matrix, 2> u = {sys.sectors[0].propagator(sched->tau), sys.sectors[1].propagator(sched->tau)};
    // A pi pulse about x swaps the qubit labels of every block; the qubit frequency cancels
    // between consecutive intervals.
    Matrix block = rho.blocks[0][1];
    int a = 0, b = 1;
    for (int k = 0; k < 2 * sched->n; ++k) {
        block = u[a] * block * u[b].adjoint();
        std::swap(a, b);
    }
    return block.trace();
}

FreeCoherence::FreeCoherence(const ExactSystem& sys, const BlockState& rho)
    : e_plus_(sys.sectors[0].energy), e_minus_(sys.sectors[1].energy), omega0_(sys.qubit.omega0) {
    const Matrix& vp = sys.sectors[0].vectors;
    const Matrix& vm = sys.sectors[1].vectors;
    const Matrix r = vp.adjoint() * rho.blocks[0][1] * vm;
    const Matrix o = vm.adjoint() * vp;
    weights_ = r.cwiseProduct(o.transpose());
}

cplx FreeCoherence::operator()(double t) const {
    Eigen::VectorXcd p(e_plus_.size()), m(e_minus_.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::polar(1.0, -e_plus_(i) * t);
    for (Eigen::Index j = 0; j < m.size(); ++j) m(j) = std::polar(1.0, e_minus_(j) * t);
    return (p.transpose() * weights_ * m)(0, 0) * std::polar(1.0, omega0_ * t);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    const Matrix diff = a - b;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Qubit2x2& a, const Qubit2x2& b) { return trace_distance(to_matrix(a), to_matrix(b)); }

double wootters_concurrence(const Matrix4& rho) {
    Matrix4 yy = Matrix4::Zero();
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    const Matrix4 r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4> es(r, false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

Matrix4 two_qubit_state(const ExactSystem& sys, BellState state, bool correlated, double t) {
    const std::size_t d2 = sys.bath_dim * sys.bath_dim;
    if (4 * d2 > kMaxDimension) throw SizeError("two-qubit oracle dimension exceeds 8192");
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<double, 4> psi =
        state == BellState::psi ? std::array<double, 4>{r, 0, 0, r} : std::array<double, 4>{0, r, r, 0};
    auto s1 = [](int a) { return a >> 1; };
    auto s2 = [](int a) { return a & 1; };

    Matrix bath;
    if (correlated) {
        // <psi| e^{-beta H} |psi> = sum_{s1 s2} |psi_s|^2 e^{-beta H^{s1}} (x) e^{-beta H^{s2}}
        const std::array<double, 2> lo = {sys.sectors[0].energy.minCoeff(), sys.sectors[1].energy.minCoeff()};
        double floor = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 4; ++a) {
            if (psi[a] != 0.0) floor = std::min(floor, lo[s1(a)] + lo[s2(a)]);
        }
        const double shift = 0.5 * floor;
        bath = Matrix::Zero(Eigen::Index(d2), Eigen::Index(d2));
        for (int a = 0; a < 4; ++a) {
            if (psi[a] == 0.0) continue;
            if (sys.qubit.beta.is_infinite()) {
                if (lo[s1(a)] + lo[s2(a)] > floor + level_tolerance(floor)) continue;
                bath += psi[a] * psi[a] *
                        kron(ground_projector(sys.sectors[s1(a)], lo[s1(a)]),
                             ground_projector(sys.sectors[s2(a)], lo[s2(a)]));
            } else {
                const double beta = sys.qubit.beta.value();
                bath += psi[a] * psi[a] *
                        kron(sys.sectors[s1(a)].boltzmann(beta, shift), sys.sectors[s2(a)].boltzmann(beta, shift));
            }
        }
        bath /= bath.trace();
    } else {
        const Matrix single = bath_thermal(sys);
        bath = kron(single, single);
    }

    const std::array<Matrix, 2> u = {sys.sectors[0].propagator(t), sys.sectors[1].propagator(t)};
    std::array<Matrix, 4> big;
    for (int a = 0; a < 4; ++a) {
        if (psi[a] != 0.0) big[a] = kron(u[s1(a)], u[s2(a)]);
    }
    auto energy = [&](int a) { return 0.5 * sys.qubit.omega0 * ((s1(a) ? -1 : 1) + (s2(a) ? -1 : 1)); };
    Matrix4 out = Matrix4::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (psi[a] == 0.0 || psi[b] == 0.0) continue;
            const cplx tr = t == 0.0 ? bath.trace() : (big[a] * bath * big[b].adjoint()).trace();
            out(a, b) = psi[a] * psi[b] * tr * std::polar(1.0, (energy(a) - energy(b)) * t);
        }
    }
    return out;
}

ExactWitnesses exact_witnesses(const ExactSystem& sys, const PovmElements& prep, double t, BellState state,
                               bool correlated) {
    ExactWitnesses w;
    const BlockState rho = prepare_state(sys, prep);
    const BlockState bar = product_of_marginals(rho);
    w.initial_distance = trace_distance(rho.dense(), bar.dense());
    w.trace_distance = t == 0.0 ? trace_distance(rho.reduced(), bar.reduced())
                                : trace_distance(evolve_state(sys, rho, t).reduced(), evolve_state(sys, bar, t).reduced());
    const Matrix4 two = two_qubit_state(sys, state, correlated, t);
    w.concurrence = wootters_concurrence(two);
    w.rho14 = state == BellState::psi ? two(0, 3) : two(1, 2);
    return w;
}

}  // namespace dephase::oracle
