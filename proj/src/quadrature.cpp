#include "dephase/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace dephase {

namespace {

constexpr std::size_t kNodes = 16;
constexpr double kTailDecades = 40.0;

struct Rule {
    std::array<double, kNodes> x{};
    std::array<double, kNodes> w{};
};

const Rule& legendre_rule() {
    static const Rule rule = [] {
        using gauss = boost::math::quadrature::gauss<double, kNodes>;
        const auto& abscissa = gauss::abscissa();
        const auto& weights = gauss::weights();
        Rule r;
        constexpr std::size_t half = kNodes / 2;
        for (std::size_t i = 0; i < half; ++i) {
            r.x[half - 1 - i] = -abscissa[i];
            r.w[half - 1 - i] = weights[i];
            r.x[half + i] = abscissa[i];
            r.w[half + i] = weights[i];
        }
        return r;
    }();
    return rule;
}

struct Component {
    double gamma = 0.0, theta = 0.0, log_factor = 0.0;
};

Component diff(const kernels::ModeSums& a, const kernels::ModeSums& b) {
    return {std::abs(a.gamma - b.gamma), std::abs(a.theta - b.theta), std::abs(a.log_factor - b.log_factor)};
}

class OhmicIntegrator {
  public:
    OhmicIntegrator(kernels::Family f, const kernels::Args& args, const OhmicContinuum& bath)
        : family_(f), args_(args), bath_(bath) {}

    kernels::ModeSums gauss(double a, double b) {
        const Rule& rule = legendre_rule();
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        std::array<double, kNodes> omega{}, weight{}, coupling{};
        for (std::size_t i = 0; i < kNodes; ++i) {
            omega[i] = mid + half * rule.x[i];
            weight[i] = half * rule.w[i] * bath_.density(omega[i]);
            coupling[i] = bath_.g;
        }
        return kernels::accumulate(family_, args_, kernels::ModeBatch{omega, weight, coupling});
    }

  private:
    kernels::Family family_;
    kernels::Args args_;
    OhmicContinuum bath_;
};

struct Panel {
    double a, b;
    kernels::ModeSums left, right;  // Gauss sums on the two halves
    Component error;
    double key;

    bool operator<(const Panel& o) const { return key < o.key; }
};

// Frequencies where the pulsed summands change character.
std::vector<double> breakpoints(kernels::Family f, const kernels::Args& args, const OhmicContinuum& bath,
                                double limit) {
    std::vector<double> pts{0.0};
    if (f == kernels::Family::boson_pulsed || f == kernels::Family::spin_pulsed) {
        const double spacing = 2.0 * std::numbers::pi / args.tau;
        for (double r = std::numbers::pi / args.tau; r < limit; r += spacing) {
            double omega = r;
            if (f == kernels::Family::spin_pulsed) {
                // renormalized frequency hits the resonance
                const double sq = r * r - bath.g * bath.g;
                if (sq <= 0.0) continue;
                omega = std::sqrt(sq);
            }
            pts.push_back(omega);
        }
    }
    pts.push_back(limit);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

double integration_limit(const OhmicContinuum& bath) { return kTailDecades * bath.cutoff; }

kernels::ModeSums integrate_ohmic(kernels::Family family, const kernels::Args& args, const OhmicContinuum& bath,
                                  const QuadratureOptions& opts) {
    OhmicIntegrator integ(family, args, bath);
    const double limit = integration_limit(bath);

    const double horizon = (family == kernels::Family::boson_free || family == kernels::Family::spin_free)
                               ? args.t
                               : 2.0 * args.n * args.tau;
    double width = 0.5 * bath.cutoff;
    if (horizon > 0.0) width = std::min(width, 2.0 * std::numbers::pi / horizon);

    std::vector<Panel> panels;
    kernels::ModeSums total;
    Component err_total;
    auto make_panel = [&](double a, double b, const kernels::ModeSums& coarse) {
        const double m = 0.5 * (a + b);
        Panel p{a, b, integ.gauss(a, m), integ.gauss(m, b), {}, 0.0};
        kernels::ModeSums fine = p.left;
        fine.merge(p.right);
        p.error = diff(coarse, fine);
        return p;
    };

    const auto edges = breakpoints(family, args, bath, limit);
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double lo = edges[s], hi = edges[s + 1];
        const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
        for (std::size_t i = 0; i < count; ++i) {
            const double a = lo + (hi - lo) * double(i) / double(count);
            const double b = (i + 1 == count) ? hi : lo + (hi - lo) * double(i + 1) / double(count);
            panels.push_back(make_panel(a, b, integ.gauss(a, b)));
        }
    }

    for (const auto& p : panels) {
        total.merge(p.left);
        total.merge(p.right);
        err_total.gamma += p.error.gamma;
        err_total.theta += p.error.theta;
        err_total.log_factor += p.error.log_factor;
    }

    auto tol = [&](double value) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    const Component scale{tol(total.gamma), tol(total.theta), tol(total.log_factor)};
    auto key_of = [&](const Component& e) {
        return std::max({e.gamma / scale.gamma, e.theta / scale.theta, e.log_factor / scale.log_factor});
    };
    for (auto& p : panels) p.key = key_of(p.error);

    std::priority_queue<Panel> heap(std::less<Panel>{}, std::move(panels));
    auto converged = [&] {
        if (total.min_argument <= kContinuumDephasingFloor || total.min_denominator <= kContinuumDephasingFloor) {
            return true;
        }
        return err_total.gamma <= tol(total.gamma) && err_total.theta <= tol(total.theta) &&
               err_total.log_factor <= tol(total.log_factor);
    };
    while (!converged() && !heap.empty() && heap.size() < opts.max_panels) {
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        Panel l = make_panel(p.a, m, p.left);
        Panel r = make_panel(m, p.b, p.right);
        l.key = key_of(l.error);
        r.key = key_of(r.error);

        // Replace the parent's contribution with the children's.
        auto sub = [](kernels::ModeSums& acc, const kernels::ModeSums& v) {
            acc.gamma -= v.gamma;
            acc.theta -= v.theta;
            acc.log_factor -= v.log_factor;
        };
        sub(total, p.left);
        sub(total, p.right);
        for (const Panel* c : {&l, &r}) {
            total.merge(c->left);
            total.merge(c->right);
        }
        err_total.gamma += l.error.gamma + r.error.gamma - p.error.gamma;
        err_total.theta += l.error.theta + r.error.theta - p.error.theta;
        err_total.log_factor += l.error.log_factor + r.error.log_factor - p.error.log_factor;
        heap.push(std::move(l));
        heap.push(std::move(r));
    }
    return total;
}

kernels::ModeSums sum_modes(kernels::Family family, const kernels::Args& args, const DiscreteSpectrum& bath) {
    std::vector<double> omega, weight, coupling;
    omega.reserve(bath.modes.size());
    for (const auto& m : bath.modes) {
        omega.push_back(m.omega);
        weight.push_back(1.0);
        coupling.push_back(m.g);
    }
    return kernels::accumulate(family, args, kernels::ModeBatch{omega, weight, coupling});
}

kernels::ModeSums mode_sums(kernels::Family family, const kernels::Args& args, const SpectralModel& spec,
                            const QuadratureOptions& opts) {
    if (const auto* d = std::get_if<DiscreteSpectrum>(&spec)) return sum_modes(family, args, *d);
    return integrate_ohmic(family, args, std::get<OhmicContinuum>(spec), opts);
}

}  // namespace dephase
