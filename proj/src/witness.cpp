#include "dephase/witness.hpp"

#include <algorithm>
#include <cmath>

namespace dephase {

namespace {

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("time must be finite and >= 0");
}

}  // namespace

Outcome<double> trace_distance(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                               const PovmCorrelated& prep, const QuadratureOptions& opts) {
    check_time(t);
    const auto wf = weight_factors(Preparation{prep}, q);
    if (t == 0.0) return {0.0};
    const auto state = dephasing_state(t, kind, spec, q, opts);
    if (!state.ok()) return {0.0, state.status};
    const auto& s = state.value;
    const double memory = kind == BathKind::spin ? s.log_factor : 0.0;
    return {std::abs(wf.rho0 * (wf.w - wf.w_u) * std::sin(s.theta)) * std::exp(memory - s.gamma)};
}

double concurrence_weight(const QubitParams& q) {
    validate(q);
    if (q.beta.is_infinite()) return -1.0;
    return -std::tanh(q.beta.value() * q.omega0);
}

Outcome<cplx> bell_coherence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                             BellState state, bool correlated, const QuadratureOptions& opts) {
    check_time(t);
    validate(q);
    if (t == 0.0) return {cplx{0.5, 0.0}};
    const auto st = dephasing_state(t, kind, spec, q, opts);
    if (!st.ok()) return {cplx{}, st.status};
    const auto& s = st.value;
    const double decay = std::exp(-2.0 * s.gamma);
    if (!correlated) return {cplx{0.5 * decay, 0.0}};
    const double memory = kind == BathKind::spin ? std::exp(2.0 * s.log_factor) : 1.0;
    const double amp = 0.5 * decay * memory;
    if (state == BellState::psi) {
        const double we = concurrence_weight(q);
        return {amp * cplx{std::cos(2.0 * s.theta), we * std::sin(2.0 * s.theta)}};
    }
    // |+-> and |-+> are degenerate, so the weight of the sine term vanishes.
    return {cplx{amp * std::cos(2.0 * s.theta), 0.0}};
}

Outcome<double> concurrence(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                            BellState state, bool correlated, const QuadratureOptions& opts) {
    const auto rho = bell_coherence(t, kind, spec, q, state, correlated, opts);
    if (!rho.ok()) return {0.0, rho.status};
    return {std::min(1.0, 2.0 * std::abs(rho.value))};
}

WitnessResult witnesses(double t, BathKind kind, const SpectralModel& spec, const QubitParams& q,
                        const PovmCorrelated& prep, BellState state, bool correlated,
                        const QuadratureOptions& opts) {
    WitnessResult r;
    r.w_e = concurrence_weight(q);
    const auto d = trace_distance(t, kind, spec, q, prep, opts);
    const auto rho = bell_coherence(t, kind, spec, q, state, correlated, opts);
    r.trace_distance = d.value;
    r.rho14 = rho.value;
    r.concurrence = std::min(1.0, 2.0 * std::abs(rho.value));
    r.status = combine(d.status, rho.status);
    return r;
}

}  // namespace dephase
