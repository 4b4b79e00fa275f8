#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dephase/oracle.hpp"
#include "dephase/scenario/oracle_check.hpp"

using namespace dephase;
using namespace dephase::oracle;

namespace {

const QubitParams kQ{0.1, Beta::finite(2.0)};
const std::vector<BathMode> kSpin3{{0.8, 0.3}, {1.4, 0.5}, {2.1, 0.2}};
const PovmElements kPovm{{reference_povm_element()}};

double hermitian_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single spin mode blocks") {
    const double w0 = 0.3, w = 1.2, g = 0.4;
    const auto sys = build_system(BathKind::spin, {{w, g}}, QubitParams{w0, Beta::finite(1.0)});
    REQUIRE(sys.dim() == 4);
    Matrix expect_plus(2, 2), expect_minus(2, 2);
    expect_plus << w0 / 2 + w / 2, g / 2, g / 2, w0 / 2 - w / 2;
    expect_minus << -w0 / 2 + w / 2, -g / 2, -g / 2, -w0 / 2 - w / 2;
    CHECK((sys.h_plus - expect_plus).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((sys.h_minus - expect_minus).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hamiltonian structure") {
    for (BathKind k : {BathKind::spin, BathKind::boson}) {
        const auto sys = k == BathKind::spin ? build_system(k, kSpin3, kQ) : build_system(k, {{0.9, 0.3}}, kQ, 12);
        const Matrix h = sys.hamiltonian();
        CHECK(hermitian_defect(h) < 1e-14);
        const Matrix sz = sys.qubit_sz();
        CHECK((h * sz - sz * h).cwiseAbs().maxCoeff() < 1e-13);
    }
    const auto free = build_system(BathKind::spin, {{1.0, 0.0}, {2.0, 0.0}}, kQ);
    const Matrix diff = free.h_plus - free.h_minus;
    CHECK((diff - Matrix::Identity(4, 4) * kQ.omega0).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((free.h_plus - free.h_bath - Matrix::Identity(4, 4) * 0.5 * kQ.omega0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("size limits") {
    const std::vector<BathMode> five(5, BathMode{1.0, 0.1});
    CHECK_THROWS_AS(build_system(BathKind::spin, five, kQ), SizeError);
    CHECK_THROWS_AS(build_system(BathKind::boson, {{1.0, 0.1}, {1.0, 0.1}, {1.0, 0.1}}, kQ), SizeError);
    CHECK_THROWS_AS(build_system(BathKind::boson, {{1.0, 0.1}, {2.0, 0.1}}, kQ, 90), SizeError);
    CHECK_THROWS_AS(build_system(BathKind::boson, {{1.0, 0.1}}, kQ, 4), InvalidParameter);
    const auto wide = build_system(BathKind::boson, {{1.0, 0.1}}, kQ, 60);
    CHECK_THROWS_AS(two_qubit_state(wide, BellState::psi, true, 0.0), SizeError);
}

TEST_CASE("thermal occupation tail at the Fock cap") {
    const auto sys = build_system(BathKind::boson, {{0.5, 0.2}}, kQ, 30);
    const auto rho = prepare_state(sys, Uncorrelated{});
    const Matrix b = rho.bath_marginal();
    CHECK(std::abs(b(30, 30)) < 1e-12);
    CHECK(std::abs(b.trace() - 1.0) < 1e-14);
}

TEST_CASE("prepared states are density matrices") {
    const auto sys = build_system(BathKind::spin, kSpin3, kQ);
    for (const OraclePreparation& p : {OraclePreparation{Uncorrelated{}}, OraclePreparation{kPovm}}) {
        const Matrix rho = prepare_state(sys, p).dense();
        CHECK(std::abs(rho.trace() - 1.0) < 1e-13);
        CHECK(hermitian_defect(rho) < 1e-14);
        CHECK(min_eigenvalue(rho) > -1e-13);
    }
    const auto zero_t = build_system(BathKind::spin, kSpin3, QubitParams{0.1, Beta::infinite()});
    const Matrix g = prepare_state(zero_t, kPovm).dense();
    CHECK(std::abs(g.trace() - 1.0) < 1e-13);
    CHECK(min_eigenvalue(g) > -1e-13);
}

TEST_CASE("reduced coherence of the POVM state") {
    for (const auto& q : {kQ, QubitParams{0.1, Beta::infinite()}}) {
        const auto sys = build_system(BathKind::spin, {{0.8, 0.3}, {1.4, 0.5}}, q);
        const auto red = prepare_state(sys, kPovm).reduced();
        const auto wf = weight_factors(preparation_from_povm(kPovm.elements), q);
        CHECK(std::abs(red[0][1] - wf.rho0) < 1e-12);
    }
}

TEST_CASE("decoupled preparations share the bath marginal") {
    const auto sys = build_system(BathKind::spin, {{0.8, 0.0}, {1.4, 0.0}}, kQ);
    const Qubit2x2 id{{{cplx{1.0}, cplx{}}, {cplx{}, cplx{1.0}}}};
    const Matrix a = prepare_state(sys, Uncorrelated{}).bath_marginal();
    const Matrix b = prepare_state(sys, PovmElements{{id}}).bath_marginal();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(prepare_state(sys, PovmElements{{id}}).reduced()[0][1]) < 1e-15);
}

TEST_CASE("unitary evolution invariants") {
    const auto sys = build_system(BathKind::spin, kSpin3, kQ);
    const auto rho = prepare_state(sys, kPovm);
    const Matrix r0 = rho.dense();
    Eigen::SelfAdjointEigenSolver<Matrix> e0(r0);
    for (double t : {0.7, 3.1}) {
        const auto rt = evolve_state(sys, rho, t);
        const auto red0 = rho.reduced();
        const auto redt = rt.reduced();
        CHECK(std::abs(redt[0][0] - red0[0][0]) < 1e-13);
        CHECK(std::abs(redt[1][1] - red0[1][1]) < 1e-13);
        Eigen::SelfAdjointEigenSolver<Matrix> et(rt.dense());
        CHECK((et.eigenvalues() - e0.eigenvalues()).cwiseAbs().maxCoeff() < 1e-13);
        // lab-frame coherence times the frame phase is the interaction-picture value
        const cplx lab = redt[0][1];
        CHECK(std::abs(lab * std::exp(cplx{0.0, kQ.omega0 * t}) - evolve_coherence(sys, rho, t)) < 1e-13);
    }
}

TEST_CASE("spectral coherence matches direct propagation") {
    const auto sys = build_system(BathKind::boson, {{0.9, 0.4}}, kQ, 20);
    const auto rho = prepare_state(sys, kPovm);
    const FreeCoherence fc(sys, rho);
    for (double t : {0.0, 0.4, 2.5, 9.0}) CHECK(std::abs(fc(t) - evolve_coherence(sys, rho, t)) < 1e-13);
}

TEST_CASE("repeated pulse cycles equal direct products") {
    const auto sys = build_system(BathKind::spin, kSpin3, kQ);
    const auto rho = prepare_state(sys, kPovm);
    const double tau = 0.3;
    const int n = 5;
    // one cycle: tau under H+ then H- on the ket side, the mirror image on the bra side
    const Matrix up = sys.sectors[0].propagator(tau), um = sys.sectors[1].propagator(tau);
    const Matrix ket_cycle = um * up, bra_cycle = up * um;
    Matrix ket = Matrix::Identity(sys.bath_dim, sys.bath_dim), bra = ket;
    for (int i = 0; i < n; ++i) {
        ket = ket_cycle * ket;
        bra = bra_cycle * bra;
    }
    const cplx direct = (ket * rho.blocks[0][1] * bra.adjoint()).trace();
    CHECK(std::abs(direct - evolve_coherence(sys, rho, 2.0 * n * tau, PulseSchedule::make(tau, n))) < 1e-12);
    CHECK_THROWS_AS(evolve_coherence(sys, rho, 1.0, PulseSchedule::make(tau, n)), InvalidParameter);
}

TEST_CASE("boson truncation converges") {
    const std::vector<BathMode> m{{0.7, 0.35}};
    const auto a = build_system(BathKind::boson, m, kQ, 30);
    const auto b = build_system(BathKind::boson, m, kQ, 60);
    const FreeCoherence ca(a, prepare_state(a, kPovm)), cb(b, prepare_state(b, kPovm));
    for (double t : {0.5, 3.0, 8.0}) CHECK(std::abs(ca(t) - cb(t)) < 1e-10);
}

TEST_CASE("trace distance and concurrence helpers") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));

    Matrix4 bell = Matrix4::Zero();
    bell(0, 0) = bell(3, 3) = bell(0, 3) = bell(3, 0) = 0.5;
    CHECK(wootters_concurrence(bell) == doctest::Approx(1.0));
    Matrix4 prod = Matrix4::Zero();
    prod(0, 0) = 1.0;
    CHECK(wootters_concurrence(prod) == doctest::Approx(0.0).epsilon(1e-12));
    for (double p : {0.2, 0.5, 0.8}) {
        const Matrix4 werner = p * bell + (1.0 - p) / 4.0 * Matrix4::Identity();
        CHECK(wootters_concurrence(werner) == doctest::Approx(std::max(0.0, 1.5 * p - 0.5)).epsilon(1e-10));
    }
}

TEST_CASE("two-qubit states") {
    const auto sys = build_system(BathKind::spin, {{0.8, 0.3}, {1.4, 0.5}}, kQ);
    for (BellState s : {BellState::psi, BellState::phi}) {
        for (bool corr : {false, true}) {
            const Matrix4 r = two_qubit_state(sys, s, corr, 0.0);
            CHECK(std::abs(r.trace() - 1.0) < 1e-13);
            CHECK(wootters_concurrence(r) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("Bell coherences against the exact two-qubit state") {
    const DiscreteSpectrum spec{{{0.8, 0.3}, {1.4, 0.5}}};
    for (BathKind k : {BathKind::spin, BathKind::boson}) {
        const auto sys = k == BathKind::spin ? build_system(k, spec.modes, kQ) : build_system(k, {{0.9, 0.3}}, kQ, 16);
        const SpectralModel sm = k == BathKind::spin ? SpectralModel{spec} : SpectralModel{DiscreteSpectrum{{{0.9, 0.3}}}};
        for (bool corr : {false, true}) {
            for (double t : {0.6, 2.3}) {
                const Matrix4 psi = two_qubit_state(sys, BellState::psi, corr, t);
                const Matrix4 phi = two_qubit_state(sys, BellState::phi, corr, t);
                CHECK(std::abs(psi(0, 3) - bell_coherence(t, k, sm, kQ, BellState::psi, corr).value) < 1e-10);
                CHECK(std::abs(phi(1, 2) - bell_coherence(t, k, sm, kQ, BellState::phi, corr).value) < 1e-10);
                CHECK(wootters_concurrence(psi) ==
                      doctest::Approx(concurrence(t, k, sm, kQ, BellState::psi, corr).value).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("trace distance is bounded by its initial full-space value") {
    const auto sys = build_system(BathKind::spin, kSpin3, kQ);
    for (int i = 0; i <= 30; ++i) {
        const auto w = exact_witnesses(sys, kPovm, 0.2 * i, BellState::psi, true);
        CHECK(w.trace_distance <= w.initial_distance + 1e-14);
        if (i == 0) CHECK(w.trace_distance < 1e-14);
    }
}

TEST_CASE("oracle harness") {
    using namespace dephase::scenario;
    const auto suite = random_suite(11, 6, 20);
    const auto again = random_suite(11, 6, 20);
    REQUIRE(suite.size() == 6);
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CHECK(suite[i].name == again[i].name);
        CHECK(suite[i].times == again[i].times);
    }
    const auto report = oracle_check(suite, {2, 1e-8, false});
    CHECK(report.passed());
    const auto bad = oracle_check(suite, {2, 1e-8, true});
    CHECK_FALSE(bad.passed());
    CHECK(bad.table().find("FAIL") != std::string::npos);
}

}
