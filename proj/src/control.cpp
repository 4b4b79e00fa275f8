#include "dephase/control.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dephase/parallel.hpp"

#define DEPHASE_KERNEL_NS scalar_v1
#include "kernels/mode_kernels.hpp"

namespace dephase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

kernels::Args pulsed_args(const PulseSchedule& sched, const QubitParams* q) {
    kernels::Args a;
    a.t = sched.total_time();
    a.tau = sched.tau;
    a.n = sched.n;
    if (q == nullptr || q->beta.is_infinite()) {
        a.zero_temperature = true;
    } else {
        a.beta = q->beta.value();
    }
    return a;
}

void check(const PulseSchedule& s) {
    if (!(s.tau > 0.0) || !std::isfinite(s.tau)) throw InvalidParameter("pulse interval must be > 0");
    if (s.n < 1) throw InvalidParameter("pulse-pair count must be >= 1");
}

double floor_for(const SpectralModel& spec) {
    return std::holds_alternative<DiscreteSpectrum>(spec) ? 0.0 : kContinuumDephasingFloor;
}

}  // namespace

PulseSchedule PulseSchedule::make(double tau, int n) {
    PulseSchedule s{tau, n};
    check(s);
    return s;
}

double chebyshev_ratio(double phi, int n) {
    if (n < 1) throw InvalidParameter("chebyshev_ratio needs n >= 1");
    return kernels::chebyshev_ratio(phi, n);
}

PulsedSpinTerm pulsed_spin_term(const BathMode& mode, const PulseSchedule& sched) {
    validate(mode);
    check(sched);
    const double w = mode.omega, g = mode.g;
    const double cap2 = w * w + g * g;
    const double cap = std::sqrt(cap2);
    const double s = std::sin(0.5 * cap * sched.tau);
    const double c = std::cos(0.5 * cap * sched.tau);
    PulsedSpinTerm term;
    term.omega_cap = cap;
    term.x = 1.0 - 2.0 * (w * w / cap2) * s * s;
    term.y = (w / cap) * std::sin(cap * sched.tau);
    term.phi = 2.0 * std::atan2(w * std::abs(s), std::sqrt(g * g + w * w * c * c));
    term.f = chebyshev_ratio(term.phi, sched.n) * g * w / cap2 * s * s;
    return term;
}

double gamma_boson_pulsed(const PulseSchedule& sched, const SpectralModel& spec, const QubitParams& q,
                          const QuadratureOptions& opts) {
    check(sched);
    validate(spec);
    return mode_sums(kernels::Family::boson_pulsed, pulsed_args(sched, &q), spec, opts).gamma;
}

Outcome<double> gamma_spin_pulsed(const PulseSchedule& sched, const SpectralModel& spec,
                                  const QuadratureOptions& opts) {
    check(sched);
    validate(spec);
    const auto sums = mode_sums(kernels::Family::spin_pulsed, pulsed_args(sched, nullptr), spec, opts);
    if (sums.min_argument <= floor_for(spec)) return {kInf, Status::complete_dephasing};
    return {sums.gamma};
}

double theta_boson_pulsed(const PulseSchedule& sched, const SpectralModel& spec, const QuadratureOptions& opts) {
    check(sched);
    validate(spec);
    return mode_sums(kernels::Family::boson_pulsed, pulsed_args(sched, nullptr), spec, opts).theta;
}

Outcome<double> eta_spin_pulsed(const BathMode& mode, const PulseSchedule& sched, const QubitParams& q) {
    validate(mode);
    check(sched);
    const auto sums = kernels::summand(kernels::Family::spin_pulsed, pulsed_args(sched, &q), mode.omega, mode.g);
    if (sums.min_denominator == 0.0) return {kInf, Status::singular_schedule};
    return {std::tan(sums.theta)};
}

Outcome<DephasingState> pulsed_state(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                                     const QubitParams& q, const QuadratureOptions& opts) {
    check(sched);
    validate(spec);
    if (kind == BathKind::boson) {
        const auto sums = mode_sums(kernels::Family::boson_pulsed, pulsed_args(sched, &q), spec, opts);
        return {{sums.gamma, sums.theta, 0.0}};
    }
    const auto sums = mode_sums(kernels::Family::spin_pulsed, pulsed_args(sched, &q), spec, opts);
    const double floor = floor_for(spec);
    if (sums.min_argument <= floor) return {{kInf, 0.0, 0.0}, Status::complete_dephasing};
    if (sums.min_denominator <= floor) return {{sums.gamma, 0.0, 0.0}, Status::singular_schedule};
    return {{sums.gamma, sums.theta, sums.log_factor}};
}

Outcome<cplx> coherence_pulsed(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                               const QubitParams& q, const Preparation& prep, const QuadratureOptions& opts) {
    const auto state = pulsed_state(sched, kind, spec, q, opts);
    if (!state.ok()) return {cplx{}, state.status};
    return {assemble_coherence(state.value, kind, prep, q)};
}

Outcome<double> delta_ratio(const PulseSchedule& sched, BathKind kind, const SpectralModel& spec,
                            const QubitParams& q, const Preparation& prep, const QuadratureOptions& opts) {
    const auto pulsed = coherence_pulsed(sched, kind, spec, q, prep, opts);
    if (!pulsed.ok()) return {0.0, pulsed.status};
    const auto free = coherence(sched.total_time(), kind, spec, q, prep, opts);
    if (!free.ok() || std::abs(free.value) == 0.0) return {kInf, Status::undefined_ratio};
    return {std::abs(pulsed.value) / std::abs(free.value)};
}

double kappa(const OhmicContinuum& bath, const QubitParams& q, double omega) {
    const double g2 = bath.g * bath.g;
    if (q.beta.is_infinite()) return g2 * bath.density(omega);
    const double beta = q.beta.value();
    if (omega == 0.0) return g2 * bath.lambda * bath.n0 * 2.0 / beta;
    // N(w) coth(beta w/2) = lambda n0 e^{-w/cutoff} (2/beta) x coth(x), x = beta w/2
    const double x = 0.5 * beta * omega;
    const double x_coth = x < 1e-4 ? 1.0 + x * x / 3.0 : x / std::tanh(x);
    return g2 * bath.lambda * bath.n0 * std::exp(-omega / bath.cutoff) * (2.0 / beta) * x_coth;
}

double tau_star(const SpectralModel& spec, const QubitParams& q) {
    validate(spec);
    const auto* bath = std::get_if<OhmicContinuum>(&spec);
    if (bath == nullptr) throw InvalidParameter("tau_star needs an Ohmic continuum");
    if (q.beta.is_infinite()) return 0.0;

    // The couplings and amplitudes cancel; unit values keep the bracket well scaled.
    const OhmicContinuum unit{1.0, 1.0, bath->cutoff, 1.0};
    const double rhs = 0.5 * kPi * kappa(unit, q, 0.0);
    auto f = [&](double tau) { return (4.0 / kPi) * kappa(unit, q, kPi / tau) - rhs; };

    constexpr double lo = 1e-4, hi = 10.0;
    constexpr int scan = 64;
    double a = lo, fa = f(lo);
    for (int i = 1; i <= scan; ++i) {
        double b = lo * std::pow(hi / lo, double(i) / scan);
        const double fb = f(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            // bisect well below the 1e-6 target
            while (b - a > 1e-9) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        }
        a = b;
        fa = fb;
    }
    throw NoCrossover("no sign change of the crossover equation in (1e-4, 10]");
}

std::optional<double> first_crossing(std::span<const double> tau, std::span<const CrossoverCell> row) {
    if (tau.size() != row.size()) throw InvalidParameter("crossing row size mismatch");
    for (std::size_t i = 1; i < row.size(); ++i) {
        const auto& p = row[i - 1];
        const auto& c = row[i];
        if (p.status != Status::ok || c.status != Status::ok) continue;
        if (!(p.delta > 0.0) || !(c.delta > 0.0)) continue;
        const double lp = std::log(p.delta), lc = std::log(c.delta);
        if (lp == 0.0) return tau[i - 1];
        if ((lp > 0.0) != (lc > 0.0) || lc == 0.0) {
            return tau[i - 1] + (tau[i] - tau[i - 1]) * lp / (lp - lc);
        }
    }
    return std::nullopt;
}

CrossoverAnalysis crossover_map(std::span<const double> tau_grid, std::span<const int> n_grid, BathKind kind,
                                const SpectralModel& spec, const QubitParams& q, const Preparation& prep,
                                const CrossoverOptions& opts) {
    if (tau_grid.empty() || n_grid.empty()) throw InvalidParameter("crossover grids must be nonempty");
    validate(spec);
    CrossoverAnalysis out;
    out.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    out.n_grid.assign(n_grid.begin(), n_grid.end());
    out.cells.resize(tau_grid.size() * n_grid.size());

    parallel_for(out.cells.size(), opts.threads, [&](std::size_t idx) {
        const std::size_t i_tau = idx % tau_grid.size();
        const std::size_t i_n = idx / tau_grid.size();
        const auto sched = PulseSchedule::make(tau_grid[i_tau], n_grid[i_n]);
        CrossoverCell cell{sched.tau, sched.n, sched.total_time(), 0.0, Regime::undefined, Status::ok};
        const auto d = delta_ratio(sched, kind, spec, q, prep, opts.quadrature);
        cell.status = d.status;
        if (d.ok()) {
            cell.delta = d.value;
            cell.regime = d.value > 1.0 ? Regime::suppression : Regime::enhancement;
        }
        out.cells[idx] = cell;
    });

    out.crossing.reserve(n_grid.size());
    for (std::size_t i_n = 0; i_n < n_grid.size(); ++i_n) {
        out.crossing.push_back(first_crossing(
            tau_grid, std::span<const CrossoverCell>(out.cells).subspan(i_n * tau_grid.size(), tau_grid.size())));
    }
    if (const auto* bath = std::get_if<OhmicContinuum>(&spec)) {
        out.kappa0 = kappa(*bath, q, 0.0);
        try {
            out.tau_star = tau_star(spec, q);
        } catch (const NoCrossover&) {
        }
    }
    return out;
}

}  // namespace dephase
