#include "dephase/scenario/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace dephase::scenario {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    int column = 0;
};

struct RawSection {
    int line = 0;
    std::map<std::string, std::vector<Entry>> keys;
};

struct RawScenario {
    int line = 0;
    std::map<std::string, RawSection> sections;
};

const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> s = {
        {"scenario", {"name", "kind", "outputs", "normalize", "lab_frame"}},
        {"spectrum", {"type", "lambda", "n0", "cutoff", "g", "modes"}},
        {"qubit", {"omega0", "beta"}},
        {"preparation", {"type", "coherence", "povm", "element"}},
        {"time", {"t_min", "t_max", "points"}},
        {"pulses", {"mode", "tau", "t_total", "n_min", "n_max", "n_step", "tau_min", "tau_max", "tau_points"}},
        {"concurrence", {"state"}},
        {"tolerance", {"abs", "rel"}},
    };
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int offset_in(std::string_view whole, std::string_view part) { return int(part.data() - whole.data()) + 1; }

std::vector<RawScenario> lex(std::string_view text) {
    std::vector<RawScenario> out;
    RawSection* current = nullptr;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::string_view full = line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const int col = offset_in(full, line);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, col, "unterminated section header");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (!schema().count(name)) throw ParseError(line_no, col + 1, "unknown section '" + name + "'");
            if (name == "scenario" || out.empty()) out.push_back(RawScenario{line_no, {}});
            auto& sections = out.back().sections;
            if (sections.count(name)) throw ParseError(line_no, col, "duplicate section '" + name + "'");
            current = &sections[name];
            current->line = line_no;
        } else {
            if (current == nullptr) throw ParseError(line_no, col, "key outside of any section");
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError(line_no, col, "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string_view value = trim(line.substr(eq + 1));
            const int vcol = value.empty() ? offset_in(full, line) + int(eq) + 1 : offset_in(full, value);
            if (key.empty()) throw ParseError(line_no, col, "empty key");
            auto& entries = current->keys[key];
            if (!entries.empty() && key != "element") throw ParseError(line_no, col, "duplicate key '" + key + "'");
            entries.push_back({std::string(value), line_no, vcol});
        }
        if (end == text.size()) break;
    }
    // Unknown keys are rejected once sections are known.
    for (const auto& sc : out) {
        for (const auto& [name, sec] : sc.sections) {
            const auto& allowed = schema().at(name);
            for (const auto& [key, entries] : sec.keys) {
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                    throw ParseError(entries.front().line, 1, "unknown key '" + key + "' in [" + name + "]");
                }
            }
        }
    }
    if (out.empty()) throw ParseError(1, 1, "config defines no scenario");
    return out;
}

double parse_number(const Entry& e, std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty()) {
        throw ParseError(e.line, e.column, "expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

double number(const Entry& e) { return parse_number(e, e.value); }

int integer(const Entry& e) {
    const double v = number(e);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError(e.line, e.column, "expected an integer");
    return int(v);
}

bool boolean(const Entry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw ParseError(e.line, e.column, "expected true or false");
}

cplx complex_number(const Entry& e, std::string_view s) {
    s = trim(s);
    if (s.empty() || s.back() != 'i') return {parse_number(e, s), 0.0};
    s.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
        return {0.0, parse_number(e, s)};
    }
    const std::string_view im = s.substr(split);
    const double imag = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : parse_number(e, im);
    return {parse_number(e, s.substr(0, split)), imag};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        parts.push_back(trim(s.substr(pos, next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

class Reader {
  public:
    Reader(const RawScenario& raw, std::string section) : raw_(raw), section_(std::move(section)) {}

    const Entry* find(const std::string& key) const {
        const auto s = raw_.sections.find(section_);
        if (s == raw_.sections.end()) return nullptr;
        const auto k = s->second.keys.find(key);
        return k == s->second.keys.end() ? nullptr : &k->second.front();
    }
    const std::vector<Entry>* all(const std::string& key) const {
        const auto s = raw_.sections.find(section_);
        if (s == raw_.sections.end()) return nullptr;
        const auto k = s->second.keys.find(key);
        return k == s->second.keys.end() ? nullptr : &k->second;
    }
    double number(const std::string& key, double fallback) const {
        const Entry* e = find(key);
        return e ? scenario::number(*e) : fallback;
    }
    int integer(const std::string& key, int fallback) const {
        const Entry* e = find(key);
        return e ? scenario::integer(*e) : fallback;
    }
    bool boolean(const std::string& key, bool fallback) const {
        const Entry* e = find(key);
        return e ? scenario::boolean(*e) : fallback;
    }
    std::string text(const std::string& key, const std::string& fallback) const {
        const Entry* e = find(key);
        return e ? e->value : fallback;
    }
    // Position used for errors that concern a whole section.
    Entry where(const std::string& key = "") const {
        if (const Entry* e = key.empty() ? nullptr : find(key)) return *e;
        const auto s = raw_.sections.find(section_);
        return {"", s == raw_.sections.end() ? raw_.line : s->second.line, 1};
    }

  private:
    const RawScenario& raw_;
    std::string section_;
};

[[noreturn]] void fail(const Entry& at, const std::string& what) { throw ParseError(at.line, at.column, what); }

template <class F>
void checked(const Entry& at, F&& f) {
    try {
        f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(at, e.what());
    }
}

Qubit2x2 parse_element(const Entry& e) {
    const auto rows = split(e.value, ';');
    if (rows.size() != 2) fail(e, "POVM element needs two rows separated by ';'");
    Qubit2x2 m{};
    for (int r = 0; r < 2; ++r) {
        const auto cols = split(rows[r], ',');
        if (cols.size() != 2) fail(e, "POVM element rows need two comma-separated entries");
        for (int c = 0; c < 2; ++c) m[r][c] = complex_number(e, cols[c]);
    }
    return m;
}

Scenario build(const RawScenario& raw) {
    Scenario s;

    const Reader sc(raw, "scenario");
    s.name = sc.text("name", s.name);
    if (s.name.empty() || s.name.find_first_of("/\\ \t,") != std::string::npos) {
        fail(sc.where("name"), "scenario name must be nonempty without spaces, commas or slashes");
    }
    if (const Entry* e = sc.find("kind")) {
        if (e->value == "boson") s.kind = BathKind::boson;
        else if (e->value == "spin") s.kind = BathKind::spin;
        else fail(*e, "kind must be boson or spin");
    }
    if (const Entry* e = sc.find("outputs")) {
        s.outputs.clear();
        for (auto item : split(e->value, ',')) {
            const auto q = quantity_from_string(item);
            if (!q) fail(*e, "unknown output '" + std::string(item) + "'");
            if (std::find(s.outputs.begin(), s.outputs.end(), *q) == s.outputs.end()) s.outputs.push_back(*q);
        }
    }
    s.normalize = sc.boolean("normalize", s.normalize);
    s.lab_frame = sc.boolean("lab_frame", s.lab_frame);

    const Reader sp(raw, "spectrum");
    const std::string type = sp.text("type", "ohmic");
    if (type == "ohmic") {
        if (sp.find("modes")) fail(sp.where("modes"), "modes only apply to a discrete spectrum");
        OhmicContinuum o{sp.number("lambda", 1.0), sp.number("n0", 2.5e3), sp.number("cutoff", 5.0),
                         sp.number("g", 0.02)};
        s.spectrum = o;
    } else if (type == "discrete") {
        for (const char* k : {"lambda", "n0", "cutoff", "g"}) {
            if (sp.find(k)) fail(sp.where(k), std::string(k) + " only applies to an ohmic spectrum");
        }
        const Entry* e = sp.find("modes");
        if (e == nullptr) fail(sp.where(), "discrete spectrum needs modes = omega:g, ...");
        DiscreteSpectrum d;
        for (auto item : split(e->value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2) fail(*e, "mode '" + std::string(item) + "' is not omega:g");
            d.modes.push_back({parse_number(*e, parts[0]), parse_number(*e, parts[1])});
        }
        s.spectrum = d;
    } else {
        fail(sp.where("type"), "spectrum type must be ohmic or discrete");
    }
    checked(sp.where(), [&] { validate(s.spectrum); });

    const Reader qb(raw, "qubit");
    s.qubit.omega0 = qb.number("omega0", s.qubit.omega0);
    if (const Entry* e = qb.find("beta")) {
        if (e->value == "inf" || e->value == "infinite") {
            s.qubit.beta = Beta::infinite();
        } else {
            const double b = number(*e);
            checked(*e, [&] { s.qubit.beta = Beta::finite(b); });
        }
    }
    checked(qb.where(), [&] { validate(s.qubit); });

    const Reader pr(raw, "preparation");
    const std::string ptype = pr.text("type", "uncorrelated");
    if (ptype == "uncorrelated") {
        if (pr.find("povm") || pr.find("element")) fail(pr.where(), "POVM given for an uncorrelated preparation");
        if (const Entry* e = pr.find("coherence")) s.initial_coherence = complex_number(*e, e->value);
        if (std::abs(s.initial_coherence) > 0.5) fail(pr.where("coherence"), "|coherence| must be <= 1/2");
    } else if (ptype == "povm") {
        if (pr.find("coherence")) fail(pr.where("coherence"), "coherence is fixed by the POVM");
        if (const Entry* e = pr.find("povm")) {
            if (e->value != "reference") fail(*e, "povm must be 'reference' or given by element lines");
            if (pr.find("element")) fail(*e, "give either povm = reference or element lines");
            s.povm = {reference_povm_element()};
        } else if (const auto* es = pr.all("element")) {
            for (const auto& e : *es) s.povm.push_back(parse_element(e));
        } else {
            fail(pr.where(), "povm preparation needs povm = reference or element lines");
        }
        checked(pr.where(), [&] { weight_factors(preparation_from_povm(s.povm), s.qubit); });
    } else {
        fail(pr.where("type"), "preparation type must be uncorrelated or povm");
    }

    const Reader tm(raw, "time");
    s.time.t_min = tm.number("t_min", s.time.t_min);
    s.time.t_max = tm.number("t_max", s.time.t_max);
    s.time.points = tm.integer("points", s.time.points);
    if (!(s.time.t_min >= 0.0) || !(s.time.t_max > s.time.t_min) || !std::isfinite(s.time.t_max)) {
        fail(tm.where(), "time grid needs 0 <= t_min < t_max");
    }
    if (s.time.points < 2) fail(tm.where("points"), "time grid needs at least 2 points");

    const Reader pu(raw, "pulses");
    if (const Entry* e = pu.find("mode")) {
        if (e->value == "none") s.pulses.mode = PulseMode::none;
        else if (e->value == "interval") s.pulses.mode = PulseMode::interval;
        else if (e->value == "total") s.pulses.mode = PulseMode::total;
        else if (e->value == "sweep") s.pulses.mode = PulseMode::sweep;
        else fail(*e, "pulse mode must be none, interval, total or sweep");
    }
    auto& p = s.pulses;
    p.tau = pu.number("tau", p.tau);
    p.t_total = pu.number("t_total", p.t_total);
    p.n_min = pu.integer("n_min", p.n_min);
    p.n_max = pu.integer("n_max", p.n_max);
    p.n_step = pu.integer("n_step", p.n_step);
    p.tau_min = pu.number("tau_min", p.tau_min);
    p.tau_max = pu.number("tau_max", p.tau_max);
    p.tau_points = pu.integer("tau_points", p.tau_points);
    if (p.mode != PulseMode::none) {
        if (p.n_min < 1 || p.n_max < p.n_min || p.n_step < 1) fail(pu.where(), "need 1 <= n_min <= n_max, n_step >= 1");
        if (p.mode == PulseMode::interval && !(p.tau > 0.0)) fail(pu.where("tau"), "tau must be > 0");
        if (p.mode == PulseMode::total && !(p.t_total > 0.0)) fail(pu.where("t_total"), "t_total must be > 0");
        if (p.mode == PulseMode::sweep &&
            (!(p.tau_min > 0.0) || !(p.tau_max > p.tau_min) || p.tau_points < 2)) {
            fail(pu.where(), "sweep needs 0 < tau_min < tau_max and tau_points >= 2");
        }
    }

    const Reader cc(raw, "concurrence");
    if (const Entry* e = cc.find("state")) {
        if (e->value == "psi") s.bell = BellState::psi;
        else if (e->value == "phi") s.bell = BellState::phi;
        else fail(*e, "state must be psi or phi");
    }

    const Reader tl(raw, "tolerance");
    s.tolerance.abs_tol = tl.number("abs", s.tolerance.abs_tol);
    s.tolerance.rel_tol = tl.number("rel", s.tolerance.rel_tol);
    if (!(s.tolerance.abs_tol > 0.0) || !(s.tolerance.rel_tol > 0.0)) fail(tl.where(), "tolerances must be > 0");

    const Entry at = sc.where("outputs");
    const bool ohmic = std::holds_alternative<OhmicContinuum>(s.spectrum);
    for (const Quantity q : s.outputs) {
        if (q == Quantity::trace_distance && !s.correlated()) fail(at, "trace_distance needs a povm preparation");
        if (q == Quantity::delta && p.mode == PulseMode::none) fail(at, "delta needs a pulse schedule");
        if (q == Quantity::crossover_map && p.mode != PulseMode::sweep) fail(at, "crossover_map needs pulse mode sweep");
        if (q == Quantity::tau_star && !ohmic) fail(at, "tau_star needs an ohmic spectrum");
    }
    return s;
}

void apply_override(std::vector<RawScenario>& raws, const std::string& assignment, int index) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ParseError(0, index, "override '" + assignment + "' is not section.key=value");
    }
    const std::string section(trim(std::string_view(assignment).substr(0, dot)));
    const std::string key(trim(std::string_view(assignment).substr(dot + 1, eq - dot - 1)));
    const std::string value(trim(std::string_view(assignment).substr(eq + 1)));
    const auto known = schema().find(section);
    if (known == schema().end() || std::find(known->second.begin(), known->second.end(), key) == known->second.end()) {
        throw ParseError(0, index, "override '" + assignment + "' names an unknown key");
    }
    for (auto& raw : raws) raw.sections[section].keys[key] = {Entry{value, 0, index}};
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : Error((line > 0     ? std::to_string(line) + ":" + std::to_string(column) + ": "
             : column > 0 ? "override " + std::to_string(column) + ": "
                          : std::string()) +
            what),
      line_(line),
      column_(column) {}

std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::coherence: return "coherence";
        case Quantity::gamma: return "gamma";
        case Quantity::theta: return "theta";
        case Quantity::delta: return "delta";
        case Quantity::trace_distance: return "trace_distance";
        case Quantity::concurrence: return "concurrence";
        case Quantity::crossover_map: return "crossover_map";
        case Quantity::tau_star: return "tau_star";
    }
    return "?";
}

std::optional<Quantity> quantity_from_string(std::string_view s) {
    for (Quantity q : {Quantity::coherence, Quantity::gamma, Quantity::theta, Quantity::delta,
                       Quantity::trace_distance, Quantity::concurrence, Quantity::crossover_map, Quantity::tau_star}) {
        if (to_string(q) == s) return q;
    }
    return std::nullopt;
}

std::vector<double> TimeGrid::values() const {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) {
        t[i] = i + 1 == points ? t_max : t_min + (t_max - t_min) * double(i) / double(points - 1);
    }
    return t;
}

std::vector<int> Pulses::n_values() const {
    std::vector<int> n;
    for (int v = n_min; v <= n_max; v += n_step) n.push_back(v);
    return n;
}

std::vector<double> Pulses::tau_values() const {
    std::vector<double> tau(tau_points);
    for (int i = 0; i < tau_points; ++i) {
        tau[i] = i + 1 == tau_points ? tau_max : tau_min + (tau_max - tau_min) * double(i) / double(tau_points - 1);
    }
    return tau;
}

std::vector<PulseSchedule> Pulses::schedules() const {
    std::vector<PulseSchedule> out;
    for (int n : n_values()) {
        if (mode == PulseMode::interval) out.push_back(PulseSchedule::make(tau, n));
        else if (mode == PulseMode::total) out.push_back(PulseSchedule::make(t_total / (2.0 * n), n));
    }
    if (mode == PulseMode::sweep) {
        for (int n : n_values()) {
            for (double t : tau_values()) out.push_back(PulseSchedule::make(t, n));
        }
    }
    return out;
}

Preparation Scenario::preparation() const {
    if (povm.empty()) return Uncorrelated{initial_coherence};
    return preparation_from_povm(povm);
}

std::vector<Scenario> parse_config(std::string_view text) { return parse_config(text, {}); }

std::vector<Scenario> parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    auto raws = lex(text);
    for (std::size_t i = 0; i < overrides.size(); ++i) apply_override(raws, overrides[i], int(i) + 1);
    std::vector<Scenario> out;
    out.reserve(raws.size());
    for (const auto& raw : raws) out.push_back(build(raw));
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (out[i].name == out[j].name) {
                throw ParseError(raws[i].line, 1, "duplicate scenario name '" + out[i].name + "'");
            }
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string format_complex(cplx z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag());
    if (im.front() != '-') im = "+" + im;
    return format_double(z.real()) + im + "i";
}

}  // namespace

std::string to_config(const Scenario& s) {
    std::ostringstream o;
    o << "[scenario]\n";
    o << "name = " << s.name << "\n";
    o << "kind = " << (s.kind == BathKind::boson ? "boson" : "spin") << "\n";
    o << "outputs = ";
    for (std::size_t i = 0; i < s.outputs.size(); ++i) o << (i ? ", " : "") << to_string(s.outputs[i]);
    o << "\n";
    o << "normalize = " << (s.normalize ? "true" : "false") << "\n";
    o << "lab_frame = " << (s.lab_frame ? "true" : "false") << "\n";

    o << "\n[spectrum]\n";
    if (const auto* oh = std::get_if<OhmicContinuum>(&s.spectrum)) {
        o << "type = ohmic\n";
        o << "lambda = " << format_double(oh->lambda) << "\n";
        o << "n0 = " << format_double(oh->n0) << "\n";
        o << "cutoff = " << format_double(oh->cutoff) << "\n";
        o << "g = " << format_double(oh->g) << "\n";
    } else {
        o << "type = discrete\nmodes = ";
        const auto& modes = std::get<DiscreteSpectrum>(s.spectrum).modes;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            o << (i ? ", " : "") << format_double(modes[i].omega) << ":" << format_double(modes[i].g);
        }
        o << "\n";
    }

    o << "\n[qubit]\n";
    o << "omega0 = " << format_double(s.qubit.omega0) << "\n";
    o << "beta = " << (s.qubit.beta.is_infinite() ? std::string("inf") : format_double(s.qubit.beta.value())) << "\n";

    o << "\n[preparation]\n";
    if (s.povm.empty()) {
        o << "type = uncorrelated\n";
        o << "coherence = " << format_complex(s.initial_coherence) << "\n";
    } else {
        o << "type = povm\n";
        for (const auto& e : s.povm) {
            o << "element = " << format_complex(e[0][0]) << ", " << format_complex(e[0][1]) << "; "
              << format_complex(e[1][0]) << ", " << format_complex(e[1][1]) << "\n";
        }
    }

    o << "\n[time]\n";
    o << "t_min = " << format_double(s.time.t_min) << "\n";
    o << "t_max = " << format_double(s.time.t_max) << "\n";
    o << "points = " << s.time.points << "\n";

    const auto& p = s.pulses;
    o << "\n[pulses]\n";
    const char* modes[] = {"none", "interval", "total", "sweep"};
    o << "mode = " << modes[int(p.mode)] << "\n";
    o << "tau = " << format_double(p.tau) << "\n";
    o << "t_total = " << format_double(p.t_total) << "\n";
    o << "n_min = " << p.n_min << "\n";
    o << "n_max = " << p.n_max << "\n";
    o << "n_step = " << p.n_step << "\n";
    o << "tau_min = " << format_double(p.tau_min) << "\n";
    o << "tau_max = " << format_double(p.tau_max) << "\n";
    o << "tau_points = " << p.tau_points << "\n";

    o << "\n[concurrence]\n";
    o << "state = " << (s.bell == BellState::psi ? "psi" : "phi") << "\n";

    o << "\n[tolerance]\n";
    o << "abs = " << format_double(s.tolerance.abs_tol) << "\n";
    o << "rel = " << format_double(s.tolerance.rel_tol) << "\n";
    return o.str();
}

}  // namespace dephase::scenario
