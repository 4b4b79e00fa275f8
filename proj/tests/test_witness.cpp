#include <doctest.h>

#include <cmath>

#include "dephase/witness.hpp"

using namespace dephase;

namespace {

const SpectralModel kWeak = OhmicContinuum{1.0, 2.5e3, 5.0, 0.02};
const SpectralModel kStrong = OhmicContinuum{10.0, 2.5e3, 5.0, 0.02};
const SpectralModel kThree = DiscreteSpectrum{{{0.8, 0.3}, {1.4, 0.5}, {2.1, 0.2}}};
const QubitParams kQ{0.1, Beta::finite(2.0)};
const PovmCorrelated kPovm = std::get<PovmCorrelated>(preparation_from_povm({reference_povm_element()}));

}  // namespace

TEST_SUITE("witness") {

TEST_CASE("trace distance starts at zero") {
    for (BathKind k : {BathKind::boson, BathKind::spin}) {
        CHECK(trace_distance(0.0, k, kWeak, kQ, kPovm).value == 0.0);
        CHECK(trace_distance(0.0, k, kThree, kQ, kPovm).value == 0.0);
    }
}

TEST_CASE("trace distance needs W != W_u") {
    double peak = 0.0;
    for (int i = 1; i <= 50; ++i) peak = std::max(peak, trace_distance(0.1 * i, BathKind::boson, kStrong, kQ, kPovm).value);
    CHECK(peak > 1e-3);

    // w proportional to u makes W = W_u for every temperature.
    const PovmCorrelated prop{2.0, 0.5, cplx{0.6}, cplx{0.15}};
    for (const auto& q : {kQ, QubitParams{0.7, Beta::finite(0.3)}, QubitParams{0.1, Beta::infinite()}}) {
        const auto wf = weight_factors(Preparation{prop}, q);
        CHECK(wf.w.real() == doctest::Approx(wf.w_u));
        for (int i = 1; i <= 20; ++i) {
            for (BathKind k : {BathKind::boson, BathKind::spin}) {
                CHECK(trace_distance(0.25 * i, k, kThree, q, prop).value == doctest::Approx(0.0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("trace distance closed form") {
    const double t = 1.7;
    const auto st = dephasing_state(t, BathKind::spin, kThree, kQ).value;
    const auto wf = weight_factors(Preparation{kPovm}, kQ);
    const double expect = std::abs(wf.rho0 * (wf.w - wf.w_u) * std::sin(st.theta)) * std::exp(st.log_factor - st.gamma);
    CHECK(trace_distance(t, BathKind::spin, kThree, kQ, kPovm).value == doctest::Approx(expect));
}

TEST_CASE("concurrence weight") {
    CHECK(concurrence_weight(kQ) == doctest::Approx(-std::tanh(0.2)));
    CHECK(concurrence_weight(QubitParams{0.1, Beta::infinite()}) == -1.0);
}

TEST_CASE("Bell states start maximally entangled") {
    for (const auto& spec : {kWeak, kThree}) {
        for (BathKind k : {BathKind::boson, BathKind::spin}) {
            for (BellState b : {BellState::psi, BellState::phi}) {
                for (bool corr : {false, true}) {
                    CHECK(concurrence(0.0, k, spec, kQ, b, corr).value == 1.0);
                }
            }
        }
    }
}

TEST_CASE("uncorrelated Bell coherence") {
    const double t = 0.9;
    const double g = gamma_spin(t, kThree).value;
    const auto r = bell_coherence(t, BathKind::spin, kThree, kQ, BellState::psi, false);
    CHECK(r.value.real() == doctest::Approx(0.5 * std::exp(-2.0 * g)));
    CHECK(r.value.imag() == 0.0);
    const auto p = bell_coherence(t, BathKind::spin, kThree, kQ, BellState::phi, false);
    CHECK(p.value == r.value);
}

TEST_CASE("correlated Bell coherence") {
    const double t = 1.1;
    const auto st = dephasing_state(t, BathKind::spin, kThree, kQ).value;
    const double amp = 0.5 * std::exp(-2.0 * st.gamma + 2.0 * st.log_factor);
    const double we = concurrence_weight(kQ);
    const auto psi = bell_coherence(t, BathKind::spin, kThree, kQ, BellState::psi, true).value;
    CHECK(psi.real() == doctest::Approx(amp * std::cos(2.0 * st.theta)));
    CHECK(psi.imag() == doctest::Approx(amp * we * std::sin(2.0 * st.theta)));
    const auto phi = bell_coherence(t, BathKind::spin, kThree, kQ, BellState::phi, true).value;
    CHECK(phi.real() == doctest::Approx(amp * std::cos(2.0 * st.theta)));
    CHECK(phi.imag() == 0.0);
}

TEST_CASE("phase reduces the correlated concurrence") {
    for (int i = 1; i <= 40; ++i) {
        const double t = 0.125 * i;
        for (BathKind k : {BathKind::boson, BathKind::spin}) {
            const double c = concurrence(t, k, kWeak, kQ, BellState::psi, true).value;
            const double u = concurrence(t, k, kWeak, kQ, BellState::psi, false).value;
            if (k == BathKind::boson) CHECK(u >= c - 1e-15);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}

TEST_CASE("witness bundle") {
    const auto w = witnesses(0.8, BathKind::boson, kThree, kQ, kPovm, BellState::psi, true);
    CHECK(w.status == Status::ok);
    CHECK(w.w_e == concurrence_weight(kQ));
    CHECK(w.concurrence == doctest::Approx(2.0 * std::abs(w.rho14)));
    CHECK(w.trace_distance == trace_distance(0.8, BathKind::boson, kThree, kQ, kPovm).value);
}

TEST_CASE("complete dephasing zeroes the witnesses") {
    const SpectralModel one = DiscreteSpectrum{{{1.0, 2.0}}};
    const double t = 1.01 * *spin_dephasing_onset(one);
    const auto d = trace_distance(t, BathKind::spin, one, kQ, kPovm);
    CHECK(d.status == Status::complete_dephasing);
    CHECK(d.value == 0.0);
    const auto c = concurrence(t, BathKind::spin, one, kQ, BellState::psi, true);
    CHECK(c.status == Status::complete_dephasing);
    CHECK(c.value == 0.0);
}

}
