#include <doctest.h>

#include <cmath>
#include <functional>

#include "dephase/dephasing.hpp"
#include "dephase/quadrature.hpp"

using namespace dephase;

namespace {

// Composite Simpson rule on [0, b] with the integrand's value at 0 supplied separately.
double simpson(const std::function<double(double)>& f, double f0, double b, int intervals) {
    const double h = b / intervals;
    double s = f0 + f(b);
    for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

const OhmicContinuum kWeak{1.0, 2.5e3, 5.0, 0.02};
const OhmicContinuum kStrong{10.0, 2.5e3, 5.0, 0.02};

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("integration limit") {
    CHECK(integration_limit(kWeak) == doctest::Approx(200.0));
}

TEST_CASE("zero temperature boson closed forms") {
    const QubitParams q{0.1, Beta::infinite()};
    const double pref = kWeak.g * kWeak.g * kWeak.lambda * kWeak.n0;
    for (double t : {0.01, 0.3, 1.0, 4.0, 20.0}) {
        CAPTURE(t);
        const double th = pref * std::atan(t * kWeak.cutoff);
        const double ga = 0.5 * pref * std::log1p(std::pow(t * kWeak.cutoff, 2));
        CHECK(theta_boson(t, kWeak) == doctest::Approx(th).epsilon(1e-9));
        CHECK(gamma_boson(t, kWeak, q) == doctest::Approx(ga).epsilon(1e-9));
    }
}

TEST_CASE("finite temperature boson against Simpson") {
    const double beta = 2.0;
    const QubitParams q{0.1, Beta::finite(beta)};
    const auto& b = kStrong;
    for (double t : {0.2, 1.5, 5.0}) {
        CAPTURE(t);
        auto f = [&](double w) {
            return b.g * b.g * b.density(w) / std::tanh(0.5 * beta * w) * (1.0 - std::cos(w * t)) / (w * w);
        };
        const double f0 = b.g * b.g * b.lambda * b.n0 * t * t / beta;
        const double ref = simpson(f, f0, integration_limit(b), 400000);
        CHECK(gamma_boson(t, b, q) == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("finite temperature spin against Simpson") {
    const double beta = 2.0;
    const QubitParams q{0.1, Beta::finite(beta)};
    const auto& b = kWeak;
    const double t = 1.2;
    auto arg = [&](double w) {
        const double cap2 = w * w + b.g * b.g;
        return 1.0 - 2.0 * b.g * b.g / cap2 * std::pow(std::sin(0.5 * std::sqrt(cap2) * t), 2);
    };
    auto eta = [&](double w) {
        const double cap2 = w * w + b.g * b.g;
        const double cap = std::sqrt(cap2);
        return b.g * b.g / cap2 * std::tanh(0.5 * beta * cap) * std::sin(cap * t) / arg(w);
    };
    const double lim = integration_limit(b);
    const double gamma = simpson([&](double w) { return -b.density(w) * std::log(arg(w)); }, 0.0, lim, 400000);
    const double theta = simpson([&](double w) { return b.density(w) * std::atan(eta(w)); }, 0.0, lim, 400000);
    const double logf =
        simpson([&](double w) { return 0.5 * b.density(w) * std::log1p(eta(w) * eta(w)); }, 0.0, lim, 400000);

    const auto g = gamma_spin(t, b);
    REQUIRE(g.ok());
    CHECK(g.value == doctest::Approx(gamma).epsilon(1e-8));
    const auto m = theta_and_logfactor_spin(t, b, q);
    REQUIRE(m.ok());
    CHECK(m.value.theta == doctest::Approx(theta).epsilon(1e-8));
    CHECK(m.value.log_factor == doctest::Approx(logf).epsilon(1e-7));
}

TEST_CASE("dense discrete spectrum approaches the continuum") {
    const double t = 0.8;
    const QubitParams q{0.1, Beta::finite(2.0)};
    const int n = 200000;
    const double h = integration_limit(kStrong) / n;
    DiscreteSpectrum d;
    // midpoint rule turned into equally coupled modes: g_k^2 = g^2 N(w_k) h
    for (int i = 0; i < n; ++i) {
        const double w = (i + 0.5) * h;
        d.modes.push_back({w, kStrong.g * std::sqrt(kStrong.density(w) * h)});
    }
    CHECK(gamma_boson(t, d, q) == doctest::Approx(gamma_boson(t, kStrong, q)).epsilon(1e-6));
    CHECK(theta_boson(t, d) == doctest::Approx(theta_boson(t, kStrong)).epsilon(1e-6));
}

TEST_CASE("mode_sums dispatches on the spectrum type") {
    const DiscreteSpectrum d{{{1.0, 0.1}, {2.0, 0.3}}};
    kernels::Args a;
    a.t = 0.9;
    a.beta = 1.0;
    const auto direct = sum_modes(kernels::Family::spin_free, a, d);
    const auto via = mode_sums(kernels::Family::spin_free, a, SpectralModel{d});
    CHECK(direct.gamma == via.gamma);
    const auto one = kernels::summand(kernels::Family::spin_free, a, 1.0, 0.1);
    const auto two = kernels::summand(kernels::Family::spin_free, a, 2.0, 0.3);
    CHECK(direct.gamma == doctest::Approx(one.gamma + two.gamma));
    CHECK(direct.theta == doctest::Approx(one.theta + two.theta));
}

TEST_CASE("pulsed boson integral against Simpson") {
    const double tau = 0.15, beta = 2.0;
    const int n = 5;
    const double t = 2.0 * n * tau;
    const auto& b = kWeak;
    kernels::Args a;
    a.t = t;
    a.tau = tau;
    a.n = n;
    a.beta = beta;
    auto f = [&](double w) {
        return b.density(w) * kernels::summand(kernels::Family::boson_pulsed, a, w, b.g).gamma;
    };
    const double ref = simpson(f, 0.0, integration_limit(b), 400000);
    const auto got = integrate_ohmic(kernels::Family::boson_pulsed, a, b);
    CHECK(got.gamma == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("continuum spin dephasing past the onset is flagged") {
    const auto onset = spin_dephasing_onset(kWeak);
    REQUIRE(onset.has_value());
    CHECK(*onset == doctest::Approx(std::acos(-1.0) / (2.0 * kWeak.g)));
    CHECK(gamma_spin(0.5 * *onset, kWeak).ok());
    const auto past = gamma_spin(1.05 * *onset, kWeak);
    CHECK(past.status == Status::complete_dephasing);
    CHECK(std::isinf(past.value));
}

}
