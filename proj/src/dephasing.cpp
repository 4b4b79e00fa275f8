#include "dephase/dephasing.hpp"

#include <cmath>
#include <limits>

namespace dephase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("time must be finite and >= 0");
}

kernels::Args free_args(double t, const QubitParams* q) {
    kernels::Args a;
    a.t = t;
    if (q == nullptr || q->beta.is_infinite()) {
        a.zero_temperature = true;
    } else {
        a.beta = q->beta.value();
    }
    return a;
}

double dephasing_floor(const SpectralModel& spec) {
    return std::holds_alternative<DiscreteSpectrum>(spec) ? 0.0 : kContinuumDephasingFloor;
}

}  // namespace

double gamma_boson(double t, const SpectralModel& spec, const QubitParams& q, const QuadratureOptions& opts) {
    check_time(t);
    validate(spec);
    if (t == 0.0) return 0.0;
    return mode_sums(kernels::Family::boson_free, free_args(t, &q), spec, opts).gamma;
}

Outcome<double> gamma_spin(double t, const SpectralModel& spec, const QuadratureOptions& opts) {
    check_time(t);
    validate(spec);
    if (t == 0.0) return {0.0};
    const auto sums = mode_sums(kernels::Family::spin_free, free_args(t, nullptr), spec, opts);
    if (sums.min_argument <= dephasing_floor(spec)) return {kInf, Status::complete_dephasing};
    return {sums.gamma};
}

double theta_boson(double t, const SpectralModel& spec, const QuadratureOptions& opts) {
    check_time(t);
    validate(spec);
    if (t == 0.0) return 0.0;
    return mode_sums(kernels::Family::boson_free, free_args(t, nullptr), spec, opts).theta;
}

Outcome<double> eta_spin(double omega, double g, double t, const QubitParams& q) {
    validate(BathMode{omega, g});
    check_time(t);
    const double cap2 = omega * omega + g * g;
    const double ratio = g * g / cap2;
    const double cap = std::sqrt(cap2);
    const double s = std::sin(0.5 * cap * t);
    const double arg = 1.0 - 2.0 * ratio * s * s;
    if (arg <= 0.0) return {kInf, Status::complete_dephasing};
    const double th = q.beta.is_infinite() ? 1.0 : std::tanh(0.5 * q.beta.value() * cap);
    return {ratio * th * std::sin(cap * t) / arg};
}

Outcome<SpinMemory> theta_and_logfactor_spin(double t, const SpectralModel& spec, const QubitParams& q,
                                             const QuadratureOptions& opts) {
    check_time(t);
    validate(spec);
    if (t == 0.0) return {};
    const auto sums = mode_sums(kernels::Family::spin_free, free_args(t, &q), spec, opts);
    if (sums.min_argument <= dephasing_floor(spec)) return {{}, Status::complete_dephasing};
    return {{sums.theta, sums.log_factor}};
}

Outcome<DephasingState> dephasing_state(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                                        const QuadratureOptions& opts) {
    check_time(t);
    validate(spec);
    if (t == 0.0) return {};
    if (kind == BathKind::boson) {
        const auto sums = mode_sums(kernels::Family::boson_free, free_args(t, &q), spec, opts);
        return {{sums.gamma, sums.theta, 0.0}};
    }
    const auto sums = mode_sums(kernels::Family::spin_free, free_args(t, &q), spec, opts);
    if (sums.min_argument <= dephasing_floor(spec)) return {{kInf, 0.0, 0.0}, Status::complete_dephasing};
    return {{sums.gamma, sums.theta, sums.log_factor}};
}

cplx assemble_coherence(const DephasingState& state, BathKind kind, const Preparation& prep, const QubitParams& q) {
    if (const auto* u = std::get_if<Uncorrelated>(&prep)) {
        return u->initial_coherence * std::exp(-state.gamma);
    }
    const auto wf = weight_factors(prep, q);
    const double memory = kind == BathKind::spin ? state.log_factor : 0.0;
    const cplx phase = std::cos(state.theta) + cplx{0.0, 1.0} * wf.w * std::sin(state.theta);
    return wf.rho0 * std::exp(memory - state.gamma) * phase;
}

Outcome<cplx> coherence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                        const Preparation& prep, const QuadratureOptions& opts) {
    const auto state = dephasing_state(t, kind, spec, q, opts);
    if (!state.ok()) return {cplx{}, state.status};
    return {assemble_coherence(state.value, kind, prep, q)};
}

double gamma_second_order(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                          const QuadratureOptions& opts) {
    if (kind == BathKind::boson) return gamma_boson(t, spec, q, opts);
    // Spin kernel sum_k g^2 cos(w (t-s)): the boson form without the thermal factor.
    return gamma_boson(t, spec, QubitParams{q.omega0, Beta::infinite()}, opts);
}

std::optional<double> spin_dephasing_onset(const SpectralModel& spec) {
    validate(spec);
    if (const auto* o = std::get_if<OhmicContinuum>(&spec)) {
        // Modes with omega -> 0 reach 1 - 2 (g/W)^2 sin^2(W t/2) = cos(g t) = 0 first.
        if (o->g == 0.0) return std::nullopt;
        return std::acos(-1.0) / (2.0 * o->g);
    }
    std::optional<double> onset;
    for (const auto& m : std::get<DiscreteSpectrum>(spec).modes) {
        if (m.g < m.omega || m.g == 0.0) continue;
        const double cap = std::hypot(m.omega, m.g);
        // sin^2(W t/2) = W^2 / (2 g^2)
        const double t = 2.0 / cap * std::asin(std::min(1.0, cap / (std::sqrt(2.0) * m.g)));
        if (!onset || t < *onset) onset = t;
    }
    return onset;
}

cplx initial_coherence(const Preparation& prep, const QubitParams& q) {
    if (const auto* u = std::get_if<Uncorrelated>(&prep)) return u->initial_coherence;
    return weight_factors(prep, q).rho0;
}

cplx to_lab_frame(cplx interaction, double t, double omega0) {
    return interaction * std::polar(1.0, -omega0 * t);
}

}  // namespace dephase
