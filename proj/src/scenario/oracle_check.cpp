#include "dephase/scenario/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "dephase/parallel.hpp"

namespace dephase::scenario {

namespace {

std::vector<double> grid(double t_max, int points, bool include_zero) {
    std::vector<double> t;
    for (int i = 0; i < points; ++i) {
        const double frac = include_zero ? double(i) / double(points - 1) : double(i + 1) / double(points);
        t.push_back(t_max * frac);
    }
    return t;
}

Preparation analytic_prep(const OracleCase& c) {
    if (c.correlated) return preparation_from_povm({reference_povm_element()});
    return Uncorrelated{};
}

oracle::OraclePreparation exact_prep(const OracleCase& c) {
    if (c.correlated) return oracle::PovmElements{{reference_povm_element()}};
    return Uncorrelated{};
}

// Points where the analytic side reports a non-ok status carry no value to compare.
std::optional<cplx> analytic_coherence(const OracleCase& c, double t, bool corrupt) {
    const DiscreteSpectrum spec{c.modes};
    const auto prep = analytic_prep(c);
    Outcome<DephasingState> st;
    if (c.pulse_pairs) {
        st = pulsed_state(PulseSchedule::make(t / (2.0 * *c.pulse_pairs), *c.pulse_pairs), c.kind, spec, c.qubit);
    } else {
        st = dephasing_state(t, c.kind, spec, c.qubit);
    }
    if (!st.ok()) return std::nullopt;
    if (corrupt) st.value.gamma = 1.01 * st.value.gamma + 1e-6;
    return assemble_coherence(st.value, c.kind, prep, c.qubit);
}

std::vector<Deviation> check_case(const OracleCase& c, bool corrupt) {
    const auto sys = oracle::build_system(c.kind, c.modes, c.qubit, c.fock_cap);
    const auto rho = oracle::prepare_state(sys, exact_prep(c));
    std::vector<Deviation> out;

    Deviation coh{c.name, c.pulse_pairs ? "coherence_pulsed" : "coherence", 0.0};
    if (c.pulse_pairs) {
        for (double t : c.times) {
            if (t == 0.0) continue;
            const PulseSchedule sched = PulseSchedule::make(t / (2.0 * *c.pulse_pairs), *c.pulse_pairs);
            const auto analytic = analytic_coherence(c, t, corrupt);
            if (!analytic) {
                ++coh.flagged;
                continue;
            }
            const cplx exact = oracle::evolve_coherence(sys, rho, sched.total_time(), sched);
            coh.max_abs = std::max(coh.max_abs, std::abs(*analytic - exact));
        }
    } else {
        const oracle::FreeCoherence exact(sys, rho);
        for (double t : c.times) {
            const auto analytic = analytic_coherence(c, t, corrupt);
            if (!analytic) {
                ++coh.flagged;
                continue;
            }
            coh.max_abs = std::max(coh.max_abs, std::abs(*analytic - exact(t)));
        }
    }
    out.push_back(coh);

    if (c.witnesses && !c.pulse_pairs) {
        const DiscreteSpectrum spec{c.modes};
        const auto povm = std::get<PovmCorrelated>(preparation_from_povm({reference_povm_element()}));
        const oracle::PovmElements elements{{reference_povm_element()}};
        Deviation td{c.name, "trace_distance", 0.0};
        Deviation cc{c.name, "concurrence", 0.0};
        Deviation r14{c.name, "rho14", 0.0};
        for (double t : c.times) {
            const auto ex = oracle::exact_witnesses(sys, elements, t, BellState::psi, c.correlated);
            const double d = trace_distance(t, c.kind, spec, c.qubit, povm).value;
            const cplx rho14 = bell_coherence(t, c.kind, spec, c.qubit, BellState::psi, c.correlated).value;
            td.max_abs = std::max(td.max_abs, std::abs(d - ex.trace_distance));
            r14.max_abs = std::max(r14.max_abs, std::abs(rho14 - ex.rho14));
            cc.max_abs = std::max(cc.max_abs, std::abs(std::min(1.0, 2.0 * std::abs(rho14)) - ex.concurrence));
        }
        out.push_back(td);
        out.push_back(r14);
        out.push_back(cc);
    }
    return out;
}

}  // namespace

double OracleReport::worst() const {
    double w = 0.0;
    for (const auto& r : rows) w = std::max(w, std::isnan(r.max_abs) ? INFINITY : r.max_abs);
    return w;
}

std::string OracleReport::table() const {
    std::string out = "scenario,quantity,max_abs_deviation,flagged_points,threshold,result\n";
    for (const auto& r : rows) {
        const bool ok = r.max_abs <= threshold;
        out += r.scenario + "," + r.quantity + "," + format_double(r.max_abs) + "," + std::to_string(r.flagged) + "," + format_double(threshold) + "," +
               (ok ? "pass" : "FAIL") + "\n";
    }
    return out;
}

std::vector<OracleCase> default_suite() {
    const std::vector<BathMode> spin4{{1.0, 0.3}, {1.7, 0.8}, {0.6, 0.2}, {2.3, 0.5}};
    const std::vector<BathMode> boson2{{1.0, 0.3}, {1.6, 0.5}};
    const std::vector<BathMode> boson1{{1.2, 0.4}};
    const std::vector<BathMode> spin3{{1.0, 0.4}, {1.7, 0.9}, {0.7, 0.3}};
    const QubitParams warm{0.1, Beta::finite(2.0)};
    const QubitParams cold{0.1, Beta::infinite()};

    std::vector<OracleCase> suite;
    for (bool corr : {true, false}) {
        const std::string tag = corr ? "corr" : "uncorr";
        suite.push_back({"spin4_free_" + tag, BathKind::spin, spin4, warm, corr, std::nullopt, grid(8.0, 50, true)});
        suite.push_back({"spin4_pulsed_" + tag, BathKind::spin, spin4, warm, corr, 4, grid(6.0, 50, false)});
        suite.push_back({"boson2_free_" + tag, BathKind::boson, boson2, warm, corr, std::nullopt, grid(8.0, 50, true)});
        suite.push_back({"boson1_pulsed_" + tag, BathKind::boson, boson1, warm, corr, 3, grid(6.0, 50, false), 40});
        suite.push_back({"spin4_free_zero_temperature_" + tag, BathKind::spin, spin4, cold, corr, std::nullopt,
                         grid(8.0, 50, true)});
    }
    OracleCase w{"spin3_witnesses", BathKind::spin, spin3, warm, true, std::nullopt, grid(6.0, 25, true)};
    w.witnesses = true;
    suite.push_back(w);
    OracleCase wb{"boson1_witnesses", BathKind::boson, boson1, warm, true, std::nullopt, grid(6.0, 12, true), 24};
    wb.witnesses = true;
    suite.push_back(wb);
    OracleCase decoupled{"spin2_decoupled", BathKind::spin, {{1.0, 0.0}, {1.5, 0.0}}, warm, true, std::nullopt,
                         grid(8.0, 50, true)};
    suite.push_back(decoupled);
    return suite;
}

std::vector<OracleCase> random_suite(std::uint64_t seed, int count, int points) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<OracleCase> out;
    for (int i = 0; i < count; ++i) {
        OracleCase c;
        c.kind = i % 2 == 0 ? BathKind::spin : BathKind::boson;
        c.correlated = (i / 2) % 2 == 0;
        const bool pulsed = (i / 4) % 2 == 1;
        c.qubit = QubitParams{0.05 + 0.5 * unit(rng), (i / 8) % 2 == 0 ? Beta::finite(2.0) : Beta::infinite()};
        std::size_t k;
        if (c.kind == BathKind::spin) {
            k = 1 + std::size_t(unit(rng) * 4.0) % 4;
        } else {
            k = pulsed ? 1 : 1 + std::size_t(unit(rng) * 2.0) % 2;
            c.fock_cap = pulsed ? 40 : 30;
        }
        for (std::size_t j = 0; j < k; ++j) {
            const double omega = 0.5 + 2.0 * unit(rng);
            const double ratio = 0.01 + 0.79 * unit(rng);
            c.modes.push_back({omega, ratio * omega});
        }
        if (pulsed) c.pulse_pairs = 1 + int(unit(rng) * 6.0) % 6;
        c.times = grid(2.0 + 6.0 * unit(rng), points, !pulsed);
        c.name = "random" + std::to_string(i) + (c.kind == BathKind::spin ? "_spin" : "_boson") +
                 std::to_string(k) + (pulsed ? "_pulsed" : "_free") + (c.correlated ? "_corr" : "_uncorr") +
                 (c.qubit.beta.is_infinite() ? "_zero_temperature" : "");
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<OracleCase> cases_from_scenario(const Scenario& s, int points) {
    const auto* d = std::get_if<DiscreteSpectrum>(&s.spectrum);
    if (d == nullptr) throw SizeError("oracle-check needs a discrete spectrum");
    const std::size_t cap = s.kind == BathKind::spin ? oracle::kMaxSpinModes : oracle::kMaxBosonModes;
    if (d->modes.size() > cap) throw SizeError("too many modes for the exact oracle");
    if (s.correlated() && s.povm.size() != 1) {
        throw InvalidParameter("oracle-check compares against the reference POVM only");
    }
    if (s.correlated()) {
        const auto ref = reference_povm_element();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                if (s.povm[0][a][b] != ref[a][b]) {
                    throw InvalidParameter("oracle-check compares against the reference POVM only");
                }
            }
        }
    }
    OracleCase base;
    base.kind = s.kind;
    base.modes = d->modes;
    base.qubit = s.qubit;
    base.correlated = s.correlated();
    base.fock_cap = 30;
    std::vector<OracleCase> out;
    OracleCase free = base;
    free.name = s.name + "_free";
    free.times = grid(s.time.t_max, points, true);
    out.push_back(free);
    if (s.pulses.mode != PulseMode::none) {
        for (int n : {s.pulses.n_min, s.pulses.n_max}) {
            OracleCase p = base;
            p.name = s.name + "_pulsed_n" + std::to_string(n);
            p.pulse_pairs = n;
            p.times = grid(s.time.t_max, points, false);
            out.push_back(p);
            if (s.pulses.n_min == s.pulses.n_max) break;
        }
    }
    return out;
}

OracleReport oracle_check(const std::vector<OracleCase>& cases, const OracleCheckOptions& opts) {
    std::vector<std::vector<Deviation>> per(cases.size());
    parallel_for(cases.size(), opts.threads, [&](std::size_t i) { per[i] = check_case(cases[i], opts.corrupt); });
    OracleReport report;
    report.threshold = opts.threshold;
    for (auto& v : per) report.rows.insert(report.rows.end(), v.begin(), v.end());
    return report;
}

}  // namespace dephase::scenario
