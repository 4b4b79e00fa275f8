#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <stdexcept>

#include "kernels/entry.hpp"

namespace dephase::kernels {

void ModeSums::merge(const ModeSums& o) {
    gamma += o.gamma;
    theta += o.theta;
    log_factor += o.log_factor;
    min_argument = std::min(min_argument, o.min_argument);
    min_denominator = std::min(min_denominator, o.min_denominator);
}

std::string_view to_string(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

std::optional<Backend> backend_from_string(std::string_view s) {
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
        if (s == to_string(b)) return b;
    }
    return std::nullopt;
}

namespace {

bool cpu_supports(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(DEPHASE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(DEPHASE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

// -1: no override; otherwise the Backend value.
std::atomic<int> forced{-1};

Backend default_backend() {
    if (const char* env = std::getenv("DEPHASE_BACKEND")) {
        if (auto b = backend_from_string(env); b && cpu_supports(*b)) return *b;
    }
    const auto all = available_backends();
    return all.back();
}

}  // namespace

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
        if (cpu_supports(b)) out.push_back(b);
    }
    return out;
}

Backend active_backend() {
    const int f = forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<Backend>(f);
    static const Backend chosen = default_backend();
    return chosen;
}

void force_backend(std::optional<Backend> b) {
    if (b && !cpu_supports(*b)) {
        throw std::invalid_argument("kernel backend not available on this CPU: " + std::string(to_string(*b)));
    }
    forced.store(b ? static_cast<int>(*b) : -1, std::memory_order_relaxed);
}

ModeSums accumulate(Family f, const Args& args, const ModeBatch& batch) {
    return accumulate(f, args, batch, active_backend());
}

ModeSums accumulate(Family f, const Args& args, const ModeBatch& batch, Backend b) {
    if (batch.weight.size() != batch.omega.size() || batch.coupling.size() != batch.omega.size()) {
        throw std::invalid_argument("mode batch arrays differ in length");
    }
    switch (b) {
        case Backend::scalar: return detail::accumulate_scalar(f, args, batch);
#if defined(DEPHASE_HAVE_AVX2)
        case Backend::avx2: return detail::accumulate_avx2(f, args, batch);
#endif
#if defined(DEPHASE_HAVE_NEON)
        case Backend::neon: return detail::accumulate_neon(f, args, batch);
#endif
        default: break;
    }
    throw std::invalid_argument("kernel backend not compiled in: " + std::string(to_string(b)));
}

ModeSums summand(Family f, const Args& args, double omega, double g) {
    const double one = 1.0;
    return detail::accumulate_scalar(f, args, ModeBatch{{&omega, 1}, {&one, 1}, {&g, 1}});
}

}  // namespace dephase::kernels
