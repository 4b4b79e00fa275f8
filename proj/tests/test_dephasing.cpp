#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dephase/dephasing.hpp"

using namespace dephase;

namespace {

const SpectralModel kWeak = OhmicContinuum{1.0, 2.5e3, 5.0, 0.02};
const SpectralModel kStrong = OhmicContinuum{10.0, 2.5e3, 5.0, 0.02};
const SpectralModel kFour = DiscreteSpectrum{{{0.7, 0.21}, {1.1, 0.4}, {1.9, 0.3}, {2.6, 0.9}}};
const QubitParams kQ{0.1, Beta::finite(2.0)};
const Preparation kPovm = preparation_from_povm({reference_povm_element()});

}  // namespace

TEST_SUITE("dephasing") {

TEST_CASE("everything vanishes at t = 0") {
    for (const auto& spec : {kWeak, kFour}) {
        CHECK(gamma_boson(0.0, spec, kQ) == 0.0);
        CHECK(theta_boson(0.0, spec) == 0.0);
        CHECK(gamma_spin(0.0, spec).value == 0.0);
        const auto m = theta_and_logfactor_spin(0.0, spec, kQ);
        CHECK(m.value.theta == 0.0);
        CHECK(m.value.log_factor == 0.0);
        for (BathKind k : {BathKind::boson, BathKind::spin}) {
            const auto rho0 = initial_coherence(kPovm, kQ);
            CHECK(coherence(0.0, k, spec, kQ, kPovm).value == rho0);
            CHECK(coherence(0.0, k, spec, kQ, Uncorrelated{cplx{0.3, 0.1}}).value == cplx{0.3, 0.1});
        }
    }
    CHECK(eta_spin(1.0, 0.5, 0.0, kQ).value == 0.0);
}

TEST_CASE("invalid times") {
    CHECK_THROWS_AS(gamma_boson(-1.0, kFour, kQ), InvalidParameter);
    CHECK_THROWS_AS(gamma_spin(NAN, kFour), InvalidParameter);
    CHECK_THROWS_AS(coherence(-0.1, BathKind::spin, kFour, kQ, kPovm), InvalidParameter);
}

TEST_CASE("decoupled bath does nothing") {
    const SpectralModel free = DiscreteSpectrum{{{1.0, 0.0}, {2.0, 0.0}}};
    const SpectralModel free_cont = OhmicContinuum{1.0, 2.5e3, 5.0, 0.0};
    for (double t : {0.5, 3.0, 17.0}) {
        CHECK(gamma_boson(t, free, kQ) == 0.0);
        CHECK(gamma_spin(t, free).value == 0.0);
        CHECK(gamma_boson(t, free_cont, kQ) == 0.0);
        for (BathKind k : {BathKind::boson, BathKind::spin}) {
            CHECK(std::abs(coherence(t, k, free, kQ, kPovm).value) ==
                  doctest::Approx(std::abs(initial_coherence(kPovm, kQ))));
        }
    }
}

TEST_CASE("single spin mode complete dephasing") {
    const double w = 1.0, g = 2.0;
    const SpectralModel one = DiscreteSpectrum{{{w, g}}};
    const auto onset = spin_dephasing_onset(one);
    REQUIRE(onset.has_value());
    const double cap = std::hypot(w, g);
    CHECK(1.0 - 2.0 * g * g / (cap * cap) * std::pow(std::sin(0.5 * cap * *onset), 2) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gamma_spin(0.99 * *onset, one).ok());
    const auto past = gamma_spin(1.01 * *onset, one);
    CHECK(past.status == Status::complete_dephasing);
    CHECK(std::isinf(past.value));
    const auto c = coherence(1.01 * *onset, BathKind::spin, one, kQ, kPovm);
    CHECK(c.status == Status::complete_dephasing);
    CHECK(c.value == cplx{});
    CHECK(eta_spin(w, g, 1.01 * *onset, kQ).status == Status::complete_dephasing);
    CHECK_FALSE(spin_dephasing_onset(DiscreteSpectrum{{{1.0, 0.9}}}).has_value());
}

TEST_CASE("eta limits") {
    const double w = 1.7, t = 0.9;
    const double g = 1e-3 * w;
    const auto weak = eta_spin(w, g, t, QubitParams{0.1, Beta::infinite()});
    CHECK(weak.value == doctest::Approx(g * g * std::sin(w * t) / (w * w)).epsilon(1e-5));
    const auto hot = eta_spin(w, 0.5, t, QubitParams{0.1, Beta::finite(1e-12)});
    CHECK(std::abs(hot.value) < 1e-11);
}

TEST_CASE("single-mode memory is the arctangent of eta") {
    const double w = 1.3, g = 0.45, t = 2.2;
    const auto eta = eta_spin(w, g, t, kQ).value;
    const auto m = theta_and_logfactor_spin(t, DiscreteSpectrum{{{w, g}}}, kQ);
    CHECK(m.value.theta == doctest::Approx(std::atan(eta)));
    CHECK(m.value.log_factor == doctest::Approx(0.5 * std::log1p(eta * eta)));
}

TEST_CASE("second order master equation") {
    for (double t : {0.3, 1.0, 4.0}) {
        CHECK(gamma_second_order(t, BathKind::boson, kFour, kQ) == gamma_boson(t, kFour, kQ));
    }
    CHECK(gamma_second_order(0.0, BathKind::spin, kFour, kQ) == 0.0);
    const double w = 1.0, g = 0.01;
    const SpectralModel one = DiscreteSpectrum{{{w, g}}};
    const double period = 2.0 * std::numbers::pi / w;
    double worst_ratio = 0.0, worst_abs = 0.0, peak = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double t = period * i / 200.0;
        const double me = gamma_second_order(t, BathKind::spin, one, kQ);
        const double exact = gamma_spin(t, one).value;
        peak = std::max(peak, exact);
        worst_abs = std::max(worst_abs, std::abs(me - exact));
        if (t <= 0.5 * period) worst_ratio = std::max(worst_ratio, std::abs(me / exact - 1.0));
    }
    CHECK(worst_ratio <= 1e-3);
    CHECK(worst_abs <= 1e-3 * peak);
}

TEST_CASE("short-time quadratic law") {
    for (const auto& spec : {kWeak, kStrong, kFour}) {
        const double t = 1e-3;
        const double a = gamma_boson(t, spec, kQ) / (t * t);
        const double b = gamma_boson(0.5 * t, spec, kQ) / (0.25 * t * t);
        CHECK(a > 0.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-3));
        const double c = gamma_spin(t, spec).value / (t * t);
        const double d = gamma_spin(0.5 * t, spec).value / (0.25 * t * t);
        CHECK(c > 0.0);
        CHECK(c == doctest::Approx(d).epsilon(1e-3));
    }
}

TEST_CASE("rescaling frequencies and time together") {
    const double c = 3.0;
    DiscreteSpectrum scaled;
    for (const auto& m : std::get<DiscreteSpectrum>(kFour).modes) scaled.modes.push_back({c * m.omega, c * m.g});
    const QubitParams qs{0.1, Beta::finite(2.0 / c)};
    for (double t : {0.4, 2.5}) {
        CHECK(gamma_boson(t / c, scaled, qs) == doctest::Approx(gamma_boson(t, kFour, kQ)));
        CHECK(gamma_spin(t / c, scaled).value == doctest::Approx(gamma_spin(t, kFour).value));
        CHECK(theta_and_logfactor_spin(t / c, scaled, qs).value.theta ==
              doctest::Approx(theta_and_logfactor_spin(t, kFour, kQ).value.theta));
    }
}

TEST_CASE("uncorrelated coherence decays monotonically") {
    const Uncorrelated u{cplx{0.5}};
    double last = 0.5;
    for (int i = 1; i <= 40; ++i) {
        const double t = 0.05 * i;
        const auto c = coherence(t, BathKind::boson, kWeak, kQ, u);
        CHECK(c.value.imag() == 0.0);
        CHECK(c.value.real() == doctest::Approx(0.5 * std::exp(-gamma_boson(t, kWeak, kQ))));
        CHECK(std::abs(c.value) <= last);
        last = std::abs(c.value);
    }
}

TEST_CASE("correlated strong bath coherence oscillates") {
    int sign_changes = 0;
    double prev = coherence(0.0, BathKind::boson, kStrong, kQ, kPovm).value.real();
    for (int i = 1; i <= 200; ++i) {
        const double re = coherence(0.025 * i, BathKind::boson, kStrong, kQ, kPovm).value.real();
        if ((re < 0.0) != (prev < 0.0)) ++sign_changes;
        prev = re;
    }
    CHECK(sign_changes >= 2);
}

TEST_CASE("zero temperature correlated coherence is a pure phase rotation") {
    const QubitParams q0{0.1, Beta::infinite()};
    const double t = 1.3;
    const auto c = coherence(t, BathKind::boson, kFour, q0, kPovm).value;
    const cplx rho0 = initial_coherence(kPovm, q0);
    const cplx expect = rho0 * std::exp(cplx{-gamma_boson(t, kFour, q0), -theta_boson(t, kFour)});
    CHECK(c.real() == doctest::Approx(expect.real()));
    CHECK(c.imag() == doctest::Approx(expect.imag()));
}

TEST_CASE("assembled coherence uses the memory factor for spins only") {
    const DephasingState st{0.2, 0.7, 0.1};
    const auto wf = weight_factors(kPovm, kQ);
    const cplx phase = std::cos(0.7) + cplx{0.0, 1.0} * wf.w * std::sin(0.7);
    const cplx spin = assemble_coherence(st, BathKind::spin, kPovm, kQ);
    const cplx boson = assemble_coherence(st, BathKind::boson, kPovm, kQ);
    CHECK(std::abs(spin - wf.rho0 * std::exp(-0.1) * phase) < 1e-15);
    CHECK(std::abs(boson - wf.rho0 * std::exp(-0.2) * phase) < 1e-15);
}

TEST_CASE("lab frame") {
    const cplx c = to_lab_frame(cplx{1.0}, 2.0, 0.5);
    CHECK(c.real() == doctest::Approx(std::cos(1.0)));
    CHECK(c.imag() == doctest::Approx(-std::sin(1.0)));
}

}
