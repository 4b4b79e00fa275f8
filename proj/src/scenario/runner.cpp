#include "dephase/scenario/runner.hpp"

#include <fstream>
#include <json.hpp>

#include "dephase/kernels.hpp"
#include "dephase/parallel.hpp"
#include "dephase/version.hpp"

namespace dephase::scenario {

namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return format_double(v); }

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::suppression: return "suppression";
        case Regime::enhancement: return "enhancement";
        case Regime::undefined: return "undefined";
    }
    return "undefined";
}

template <class F>
std::vector<Row> rows(std::size_t count, unsigned threads, F&& f) {
    std::vector<Row> out(count);
    parallel_for(count, threads, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

QuadratureOptions tolerance(const Scenario& s, const RunOptions& o) {
    QuadratureOptions q = s.tolerance;
    if (o.tol_abs) q.abs_tol = *o.tol_abs;
    if (o.tol_rel) q.rel_tol = *o.tol_rel;
    return q;
}

Row complex_cells(cplx z) { return {num(z.real()), num(z.imag()), num(std::abs(z))}; }

void append(Row& row, const Row& more) { row.insert(row.end(), more.begin(), more.end()); }

Row schedule_cells(const PulseSchedule& p) { return {num(p.total_time()), num(p.tau), std::to_string(p.n)}; }

}  // namespace

std::string Table::csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += '\n';
    }
    return out;
}

std::vector<Table> evaluate(const Scenario& s, const RunOptions& opts) {
    const auto quad = tolerance(s, opts);
    const auto prep = s.preparation();
    const cplx rho0 = initial_coherence(prep, s.qubit);
    const cplx scale = s.normalize ? 1.0 / rho0 : 1.0;
    const auto times = s.time.values();
    const bool pulsed = s.pulses.mode != PulseMode::none;
    const auto schedules = pulsed ? s.pulses.schedules() : std::vector<PulseSchedule>{};
    const Row pulse_head{"t", "tau", "n"};
    const unsigned threads = opts.threads;

    std::vector<Table> out;
    auto table = [&](Quantity q, Row header) {
        out.push_back(Table{s.name + "." + std::string(to_string(q)) + ".csv", std::move(header), {}});
        return &out.back();
    };

    for (const Quantity q : s.outputs) {
        switch (q) {
            case Quantity::coherence: {
                if (!pulsed) {
                    Table* t = table(q, {"t", "re", "im", "abs", "status"});
                    t->rows = rows(times.size(), threads, [&](std::size_t i) {
                        const auto c = coherence(times[i], s.kind, s.spectrum, s.qubit, prep, quad);
                        cplx v = c.value * scale;
                        if (s.lab_frame) v = to_lab_frame(v, times[i], s.qubit.omega0);
                        Row r{num(times[i])};
                        append(r, complex_cells(v));
                        r.push_back(std::string(to_string(c.status)));
                        return r;
                    });
                } else {
                    Table* t = table(q, {"t", "tau", "n", "re", "im", "abs", "status"});
                    t->rows = rows(schedules.size(), threads, [&](std::size_t i) {
                        const auto c = coherence_pulsed(schedules[i], s.kind, s.spectrum, s.qubit, prep, quad);
                        Row r = schedule_cells(schedules[i]);
                        append(r, complex_cells(c.value * scale));
                        r.push_back(std::string(to_string(c.status)));
                        return r;
                    });
                }
                break;
            }
            case Quantity::gamma:
            case Quantity::theta: {
                const bool g = q == Quantity::gamma;
                Row values = g ? Row{"gamma"} : Row{"theta", "log_factor"};
                auto cells = [&](const Outcome<DephasingState>& st) {
                    Row r = g ? Row{num(st.value.gamma)} : Row{num(st.value.theta), num(st.value.log_factor)};
                    r.push_back(std::string(to_string(st.status)));
                    return r;
                };
                Row head = pulsed ? pulse_head : Row{"t"};
                append(head, values);
                head.push_back("status");
                Table* t = table(q, head);
                if (!pulsed) {
                    t->rows = rows(times.size(), threads, [&](std::size_t i) {
                        Row r{num(times[i])};
                        append(r, cells(dephasing_state(times[i], s.kind, s.spectrum, s.qubit, quad)));
                        return r;
                    });
                } else {
                    t->rows = rows(schedules.size(), threads, [&](std::size_t i) {
                        Row r = schedule_cells(schedules[i]);
                        append(r, cells(pulsed_state(schedules[i], s.kind, s.spectrum, s.qubit, quad)));
                        return r;
                    });
                }
                break;
            }
            case Quantity::delta: {
                Table* t = table(q, {"t", "tau", "n", "delta", "regime", "status"});
                t->rows = rows(schedules.size(), threads, [&](std::size_t i) {
                    const auto d = delta_ratio(schedules[i], s.kind, s.spectrum, s.qubit, prep, quad);
                    Row r = schedule_cells(schedules[i]);
                    r.push_back(num(d.value));
                    r.push_back(d.ok() ? regime_name(d.value > 1.0 ? Regime::suppression : Regime::enhancement)
                                       : regime_name(Regime::undefined));
                    r.push_back(std::string(to_string(d.status)));
                    return r;
                });
                break;
            }
            case Quantity::trace_distance: {
                const auto& corr = std::get<PovmCorrelated>(prep);
                Table* t = table(q, {"t", "trace_distance", "status"});
                t->rows = rows(times.size(), threads, [&](std::size_t i) {
                    const auto d = trace_distance(times[i], s.kind, s.spectrum, s.qubit, corr, quad);
                    return Row{num(times[i]), num(d.value), std::string(to_string(d.status))};
                });
                break;
            }
            case Quantity::concurrence: {
                Table* t = table(q, {"t", "correlated", "uncorrelated", "rho14_re", "rho14_im", "rho14_abs", "status"});
                t->rows = rows(times.size(), threads, [&](std::size_t i) {
                    const auto rc = bell_coherence(times[i], s.kind, s.spectrum, s.qubit, s.bell, true, quad);
                    const auto ru = bell_coherence(times[i], s.kind, s.spectrum, s.qubit, s.bell, false, quad);
                    Row r{num(times[i]), num(std::min(1.0, 2.0 * std::abs(rc.value))),
                          num(std::min(1.0, 2.0 * std::abs(ru.value)))};
                    append(r, complex_cells(rc.value));
                    r.push_back(std::string(to_string(combine(rc.status, ru.status))));
                    return r;
                });
                break;
            }
            case Quantity::crossover_map: {
                const auto taus = s.pulses.tau_values();
                const auto ns = s.pulses.n_values();
                const auto map = crossover_map(taus, ns, s.kind, s.spectrum, s.qubit, prep, {threads, quad});
                Table* t = table(q, {"tau", "n", "t", "delta", "regime", "status"});
                for (const auto& c : map.cells) {
                    t->rows.push_back({num(c.tau), std::to_string(c.n), num(c.t), num(c.delta), regime_name(c.regime),
                                       std::string(to_string(c.status))});
                }
                Table crossing{s.name + ".crossover_crossing.csv", {"n", "tau_cross", "status"}, {}};
                for (std::size_t j = 0; j < ns.size(); ++j) {
                    const auto& x = map.crossing[j];
                    crossing.rows.push_back({std::to_string(ns[j]), x ? num(*x) : "nan", x ? "ok" : "no_crossing"});
                }
                out.push_back(std::move(crossing));
                break;
            }
            case Quantity::tau_star: {
                const auto& bath = std::get<OhmicContinuum>(s.spectrum);
                Table* t = table(q, {"beta", "cutoff", "tau_star", "kappa0", "status"});
                const std::string beta = s.qubit.beta.is_infinite() ? "inf" : num(s.qubit.beta.value());
                const double k0 = kappa(bath, s.qubit, 0.0);
                try {
                    t->rows.push_back({beta, num(bath.cutoff), num(tau_star(s.spectrum, s.qubit)), num(k0), "ok"});
                } catch (const NoCrossover&) {
                    t->rows.push_back({beta, num(bath.cutoff), "nan", num(k0), "no_crossover"});
                }
                break;
            }
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json resolved(const Scenario& s) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["name"] = s.name;
    j["kind"] = s.kind == BathKind::boson ? "boson" : "spin";
    ordered_json outputs = ordered_json::array();
    for (const auto q : s.outputs) outputs.push_back(std::string(to_string(q)));
    j["outputs"] = outputs;
    j["normalize"] = s.normalize;
    j["lab_frame"] = s.lab_frame;
    if (const auto* o = std::get_if<OhmicContinuum>(&s.spectrum)) {
        j["spectrum"] = {{"type", "ohmic"}, {"lambda", o->lambda}, {"n0", o->n0}, {"cutoff", o->cutoff}, {"g", o->g}};
    } else {
        ordered_json modes = ordered_json::array();
        for (const auto& m : std::get<DiscreteSpectrum>(s.spectrum).modes) {
            modes.push_back({{"omega", m.omega}, {"g", m.g}});
        }
        j["spectrum"] = {{"type", "discrete"}, {"modes", modes}};
    }
    j["qubit"] = {{"omega0", s.qubit.omega0},
                  {"beta", s.qubit.beta.is_infinite() ? ordered_json("inf") : ordered_json(s.qubit.beta.value())}};
    auto cjson = [](cplx z) { return ordered_json::array({z.real(), z.imag()}); };
    if (s.povm.empty()) {
        j["preparation"] = {{"type", "uncorrelated"}, {"coherence", cjson(s.initial_coherence)}};
    } else {
        ordered_json elements = ordered_json::array();
        for (const auto& e : s.povm) {
            elements.push_back(ordered_json::array({ordered_json::array({cjson(e[0][0]), cjson(e[0][1])}),
                                                    ordered_json::array({cjson(e[1][0]), cjson(e[1][1])})}));
        }
        j["preparation"] = {{"type", "povm"}, {"elements", elements}};
    }
    j["time"] = {{"t_min", s.time.t_min}, {"t_max", s.time.t_max}, {"points", s.time.points}};
    const char* modes[] = {"none", "interval", "total", "sweep"};
    const auto& p = s.pulses;
    j["pulses"] = {{"mode", modes[int(p.mode)]}, {"tau", p.tau},         {"t_total", p.t_total},
                   {"n_min", p.n_min},          {"n_max", p.n_max},     {"n_step", p.n_step},
                   {"tau_min", p.tau_min},      {"tau_max", p.tau_max}, {"tau_points", p.tau_points}};
    j["concurrence"] = {{"state", s.bell == BellState::psi ? "psi" : "phi"}};
    j["tolerance"] = {{"abs", s.tolerance.abs_tol}, {"rel", s.tolerance.rel_tol}};
    return j;
}

}  // namespace

std::string sidecar_json(const std::vector<Scenario>& scenarios, const std::vector<std::vector<Table>>& tables,
                         const RunOptions& opts) {
    nlohmann::ordered_json j;
    j["library"] = "dephase";
    j["version"] = kVersion;
    j["kernel_backend"] = std::string(kernels::to_string(kernels::active_backend()));
    j["threads"] = opts.threads;
    if (opts.tol_abs) j["tol_abs"] = *opts.tol_abs;
    if (opts.tol_rel) j["tol_rel"] = *opts.tol_rel;
    auto list = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        nlohmann::ordered_json e;
        e["resolved"] = resolved(scenarios[i]);
        e["config"] = to_config(scenarios[i]);
        auto files = nlohmann::ordered_json::array();
        for (const auto& t : tables[i]) files.push_back(t.file);
        e["files"] = files;
        list.push_back(e);
    }
    j["scenarios"] = list;
    return j.dump(2) + "\n";
}

RunResult run_scenarios(const std::vector<Scenario>& scenarios, const RunOptions& opts,
                        const std::filesystem::path& out_dir, const std::string& label) {
    std::filesystem::create_directories(out_dir);
    RunResult result;
    std::vector<std::vector<Table>> all;
    all.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        all.push_back(evaluate(s, opts));
        for (const auto& t : all.back()) {
            const auto path = out_dir / t.file;
            std::ofstream f(path, std::ios::binary);
            f << t.csv();
            if (!f) throw Error("cannot write " + path.string());
            result.files.push_back(path);
        }
    }
    result.sidecar = out_dir / (label + ".json");
    std::ofstream f(result.sidecar, std::ios::binary);
    f << sidecar_json(scenarios, all, opts);
    if (!f) throw Error("cannot write " + result.sidecar.string());
    return result;
}

}  // namespace dephase::scenario
