#pragma once

// Lane-generic summands. Instantiated with V = double for the scalar reference
// and with std::experimental::native_simd<double> in the ISA-specific units.
// Each including translation unit defines DEPHASE_KERNEL_NS so that inline
// functions compiled for different ISAs never share a mangled name.

#include <cmath>
#include <cstddef>
#include <experimental/simd>
#include <limits>
#include <numbers>

#include "dephase/kernels.hpp"

#ifndef DEPHASE_KERNEL_NS
#error "DEPHASE_KERNEL_NS must be defined before including mode_kernels.hpp"
#endif

namespace dephase::kernels {
inline namespace DEPHASE_KERNEL_NS {

namespace stdx = std::experimental;

template <class V>
struct Lane;

template <>
struct Lane<double> {
    static constexpr std::size_t width = 1;
    static double load(const double* p) { return *p; }
    static double sum(double v) { return v; }
    static double min(double v) { return v; }
};

template <class Abi>
struct Lane<stdx::simd<double, Abi>> {
    using V = stdx::simd<double, Abi>;
    static constexpr std::size_t width = V::size();
    static V load(const double* p) { return V(p, stdx::element_aligned); }
    static double sum(const V& v) { return stdx::reduce(v); }
    static double min(const V& v) { return stdx::hmin(v); }
};

inline double select(bool m, double a, double b) { return m ? a : b; }

template <class Abi>
stdx::simd<double, Abi> select(const typename stdx::simd<double, Abi>::mask_type& m,
                               const stdx::simd<double, Abi>& a, stdx::simd<double, Abi> b) {
    stdx::where(m, b) = a;
    return b;
}

template <class V>
V vmin(const V& a, const V& b) {
    return select(a < b, a, b);
}

// sin(n theta) / sin(theta), i.e. the Chebyshev polynomial U_{n-1}(cos theta),
// finite at every multiple of pi.
template <class V>
V chebyshev_ratio(const V& theta, int n) {
    using std::abs, std::floor, std::round, std::sin;
    constexpr double pi = std::numbers::pi;
    const V m = round(theta * (1.0 / pi));
    const V eps = theta - m * pi;
    const double nd = n;
    const V series = nd * (1.0 - (nd * nd - 1.0) * eps * eps * (1.0 / 6.0));
    const V ratio = select(abs(eps) < 1e-8, series, V(sin(nd * eps) / sin(eps)));
    if ((n - 1) % 2 == 0) return ratio;
    const V parity = m - 2.0 * floor(m * 0.5);
    return select(parity > 0.5, V(-ratio), ratio);
}

template <class V>
struct Acc {
    V gamma = 0.0;
    V theta = 0.0;
    V log_factor = 0.0;
    V min_argument = std::numeric_limits<double>::infinity();
    V min_denominator = std::numeric_limits<double>::infinity();
};

template <class V>
V coth_half(const V& omega, const Args& a) {
    using std::tanh;
    if (a.zero_temperature) return V(1.0);
    return 1.0 / tanh(0.5 * a.beta * omega);
}

template <class V>
V tanh_half(const V& omega, const Args& a) {
    using std::tanh;
    if (a.zero_temperature) return V(1.0);
    return tanh(0.5 * a.beta * omega);
}

template <class V>
void boson_free(const V& w, const V& g, const V& weight, const Args& a, Acc<V>& acc) {
    using std::sin;
    const V g2w = weight * g * g;
    const V s = sin(0.5 * w * a.t);
    const V inv_w2 = 1.0 / (w * w);
    acc.gamma += g2w * coth_half(w, a) * 2.0 * s * s * inv_w2;
    acc.theta += g2w * sin(w * a.t) * inv_w2;
}

template <class V>
void spin_free(const V& w, const V& g, const V& weight, const Args& a, Acc<V>& acc) {
    using std::atan, std::log1p, std::sin, std::sqrt;
    const V cap = sqrt(w * w + g * g);
    const V ratio = g * g / (cap * cap);
    const V s = sin(0.5 * cap * a.t);
    const V shift = -2.0 * ratio * s * s;
    const V arg = 1.0 + shift;
    const V eta = ratio * tanh_half(cap, a) * sin(cap * a.t) / arg;
    acc.gamma -= weight * log1p(shift);
    acc.theta += weight * atan(eta);
    acc.log_factor += weight * 0.5 * log1p(eta * eta);
    acc.min_argument = vmin(acc.min_argument, arg);
}

template <class V>
void boson_pulsed(const V& w, const V& g, const V& weight, const Args& a, Acc<V>& acc) {
    using std::sin;
    // tan(x/2)(1 - cos 2nx) = 2 sin^2(x/2) U_{n-1}(cos x) sin(nx) with x = w tau:
    // smooth through the resonances x = (2k+1) pi.
    const V x = w * a.tau;
    const V h = 0.5 * x;
    const V sh = sin(h);
    const V sinc_h = sh / h;
    const V u = chebyshev_ratio(x, a.n);
    const V base = weight * g * g * a.tau * a.tau * sinc_h * sinc_h;
    acc.gamma += base * coth_half(w, a) * 2.0 * sh * sh * u * u;
    acc.theta += base * sin(double(a.n) * x) * u;
}

template <class V>
void spin_pulsed(const V& w, const V& g, const V& weight, const Args& a, Acc<V>& acc) {
    using std::abs, std::atan, std::atan2, std::cos, std::log1p, std::sin, std::sqrt;
    const V cap2 = w * w + g * g;
    const V cap = sqrt(cap2);
    const V ratio = g * g / cap2;
    const V s = sin(0.5 * cap * a.tau);
    const V c = cos(0.5 * cap * a.tau);
    // phi = arccos(1 - 2 (w/W)^2 sin^2(W tau/2)), evaluated without cancellation.
    const V phi = 2.0 * atan2(V(w * abs(s)), V(sqrt(g * g + w * w * c * c)));
    const double nd = a.n;
    const V f = chebyshev_ratio(phi, a.n) * g * w / cap2 * s * s;
    const V shift = -8.0 * f * f;
    const V sn = sin(nd * phi);
    const V den = c * c + ratio * s * s * cos(2.0 * nd * phi);
    const V eta = 2.0 * ratio * tanh_half(cap, a) * s * c * sn * sn / den;
    acc.gamma -= weight * log1p(shift);
    acc.theta += weight * atan(eta);
    acc.log_factor += weight * 0.5 * log1p(eta * eta);
    acc.min_argument = vmin(acc.min_argument, V(1.0 + shift));
    acc.min_denominator = vmin(acc.min_denominator, V(abs(den)));
}

template <class V>
void apply(Family f, const V& w, const V& g, const V& weight, const Args& a, Acc<V>& acc) {
    switch (f) {
        case Family::boson_free: boson_free(w, g, weight, a, acc); break;
        case Family::spin_free: spin_free(w, g, weight, a, acc); break;
        case Family::boson_pulsed: boson_pulsed(w, g, weight, a, acc); break;
        case Family::spin_pulsed: spin_pulsed(w, g, weight, a, acc); break;
    }
}

template <class V>
ModeSums reduce(const Acc<V>& acc) {
    ModeSums out;
    out.gamma = Lane<V>::sum(acc.gamma);
    out.theta = Lane<V>::sum(acc.theta);
    out.log_factor = Lane<V>::sum(acc.log_factor);
    out.min_argument = Lane<V>::min(acc.min_argument);
    out.min_denominator = Lane<V>::min(acc.min_denominator);
    return out;
}

template <class V>
ModeSums run(Family f, const Args& a, const ModeBatch& batch) {
    const std::size_t count = batch.omega.size();
    const double* om = batch.omega.data();
    const double* wt = batch.weight.data();
    const double* cp = batch.coupling.data();
    constexpr std::size_t width = Lane<V>::width;

    std::size_t i = 0;
    ModeSums out;
    if constexpr (width > 1) {
        Acc<V> acc;
        for (; i + width <= count; i += width) {
            apply(f, Lane<V>::load(om + i), Lane<V>::load(cp + i), Lane<V>::load(wt + i), a, acc);
        }
        out = reduce(acc);
    }
    Acc<double> tail;
    for (; i < count; ++i) apply(f, om[i], cp[i], wt[i], a, tail);
    out.merge(reduce(tail));
    return out;
}

}  // namespace DEPHASE_KERNEL_NS
}  // namespace dephase::kernels
