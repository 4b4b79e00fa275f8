#include "dephase/bathspec.hpp"

#include <cmath>
#include <string>

namespace dephase {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::complete_dephasing: return "complete_dephasing";
        case Status::singular_schedule: return "singular_schedule";
        case Status::undefined_ratio: return "undefined_ratio";
    }
    return "unknown";
}

double OhmicContinuum::density(double omega) const {
    return lambda * n0 * omega * std::exp(-omega / cutoff);
}

Beta Beta::finite(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidParameter("beta must be positive and finite (use Beta::infinite() for T = 0)");
    }
    Beta b;
    b.beta_ = beta;
    b.infinite_ = false;
    return b;
}

double Beta::value() const {
    if (infinite_) throw InvalidParameter("beta is infinite");
    return beta_;
}

void validate(const BathMode& m) {
    if (!(m.omega > 0.0) || !std::isfinite(m.omega)) throw InvalidParameter("bath mode omega must be > 0");
    if (!(m.g >= 0.0) || !std::isfinite(m.g)) throw InvalidParameter("bath mode coupling must be >= 0");
}

void validate(const SpectralModel& spec) {
    if (const auto* d = std::get_if<DiscreteSpectrum>(&spec)) {
        if (d->modes.empty()) throw InvalidParameter("discrete spectrum needs at least one mode");
        for (const auto& m : d->modes) validate(m);
        return;
    }
    const auto& o = std::get<OhmicContinuum>(spec);
    if (!(o.lambda > 0.0)) throw InvalidParameter("ohmic lambda must be > 0");
    if (!(o.n0 > 0.0)) throw InvalidParameter("ohmic n0 must be > 0");
    if (!(o.cutoff > 0.0)) throw InvalidParameter("ohmic cutoff must be > 0");
    if (!(o.g >= 0.0)) throw InvalidParameter("ohmic coupling must be >= 0");
}

void validate(const QubitParams& q) {
    if (!(q.omega0 > 0.0) || !std::isfinite(q.omega0)) throw InvalidParameter("omega0 must be > 0");
}

SpectralModel build_ohmic(double lambda, double n0, double cutoff, double g) {
    SpectralModel spec = OhmicContinuum{lambda, n0, cutoff, g};
    validate(spec);
    return spec;
}

Qubit2x2 reference_povm_element() {
    return {{{cplx{1.5}, cplx{0.5}}, {cplx{0.5}, cplx{0.5}}}};
}

Preparation preparation_from_povm(const std::vector<Qubit2x2>& elements) {
    if (elements.empty()) throw InvalidParameter("POVM list is empty");
    PovmCorrelated p;
    for (const auto& e : elements) {
        // u_s = <s|E^dag E|s>, w_s = <s|E^dag sigma_- E|s> with sigma_- = |-><+|.
        p.u_plus += std::norm(e[0][0]) + std::norm(e[1][0]);
        p.u_minus += std::norm(e[0][1]) + std::norm(e[1][1]);
        p.w_plus += std::conj(e[1][0]) * e[0][0];
        p.w_minus += std::conj(e[1][1]) * e[0][1];
    }
    if (p.u_plus + p.u_minus <= 0.0) throw DegeneratePreparation("POVM elements annihilate both qubit states");
    return p;
}

std::array<double, 2> sector_weights(const QubitParams& q) {
    if (q.beta.is_infinite()) return {0.0, 1.0};
    return {std::exp(-q.beta.value() * q.omega0), 1.0};
}

WeightFactors weight_factors(const Preparation& prep, const QubitParams& q) {
    const auto* c = std::get_if<PovmCorrelated>(&prep);
    if (c == nullptr) throw InvalidParameter("weight factors are defined for POVM preparations only");
    if (c->u_plus < 0.0 || c->u_minus < 0.0 || c->u_plus + c->u_minus <= 0.0) {
        throw DegeneratePreparation("u_plus, u_minus must be >= 0 with a positive sum");
    }
    validate(q);

    auto [pp, pm] = sector_weights(q);
    // At T = 0 with an empty lower sector the upper sector is the only one populated.
    if (c->u_plus * pp + c->u_minus * pm == 0.0) {
        pp = 1.0;
        pm = 0.0;
    }
    const double u_sum = c->u_plus * pp + c->u_minus * pm;
    const cplx w_sum = c->w_plus * pp + c->w_minus * pm;
    const double w_scale = std::abs(c->w_plus) * pp + std::abs(c->w_minus) * pm;
    if (w_scale == 0.0 || std::abs(w_sum) <= 1e-15 * w_scale) {
        throw DegenerateCoherence("weighted w sum vanishes: initial coherence is exactly zero");
    }

    WeightFactors out;
    out.w = (c->w_plus * pp - c->w_minus * pm) / w_sum;
    out.w_u = (c->u_plus * pp - c->u_minus * pm) / u_sum;
    out.rho0 = w_sum / u_sum;
    return out;
}

}  // namespace dephase
