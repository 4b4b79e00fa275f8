#include "dephase/scenario/presets.hpp"

#include <sstream>

#include "dephase/status.hpp"

namespace dephase::scenario {

namespace {

// Parameters of the numerical study: coupling 0.02, beta = 2, omega0 = 0.1,
// Ohmic cutoff 5 with N0 = 2500; lambda = 1 (weak) or 10 (strong).
struct Bath {
    const char* label;
    double lambda;
};
constexpr Bath kWeak{"weak", 1.0};
constexpr Bath kStrong{"strong", 10.0};

struct Block {
    std::string name;
    const char* kind;
    Bath bath;
    bool correlated;
    std::string outputs;
    std::string extra;  // trailing sections
    bool normalize = false;
    const char* beta = "2";
};

std::string render(const Block& b) {
    std::ostringstream o;
    o << "[scenario]\nname = " << b.name << "\nkind = " << b.kind << "\noutputs = " << b.outputs
      << "\nnormalize = " << (b.normalize ? "true" : "false") << "\n\n";
    o << "[spectrum]\ntype = ohmic\nlambda = " << b.bath.lambda << "\nn0 = 2500\ncutoff = 5\ng = 0.02\n\n";
    o << "[qubit]\nomega0 = 0.1\nbeta = " << b.beta << "\n\n";
    if (b.correlated) {
        o << "[preparation]\ntype = povm\npovm = reference\n\n";
    } else {
        o << "[preparation]\ntype = uncorrelated\ncoherence = 0.5\n\n";
    }
    o << b.extra << "\n";
    return o.str();
}

std::string name(const char* fig, const Bath& bath, const char* kind, bool corr) {
    return std::string(fig) + "_" + bath.label + "_" + kind + (corr ? "_corr" : "_uncorr");
}

}  // namespace

std::vector<std::string> preset_ids() { return {"1", "2", "3a", "3b", "4"}; }

std::string preset_config(std::string_view id) {
    std::string text;
    const char* kinds[] = {"boson", "spin"};
    if (id == "1") {
        for (const Bath& bath : {kWeak, kStrong}) {
            for (const char* kind : kinds) {
                for (bool corr : {true, false}) {
                    Block b{name("fig1", bath, kind, corr), kind, bath, corr, "coherence",
                            "[time]\nt_min = 0\nt_max = 5\npoints = 201\n"};
                    b.normalize = true;
                    text += render(b);
                }
            }
        }
    } else if (id == "2") {
        for (const Bath& bath : {kWeak, kStrong}) {
            for (const char* kind : kinds) {
                text += render({std::string("fig2_") + bath.label + "_" + kind, kind, bath, true,
                                "trace_distance, concurrence",
                                "[time]\nt_min = 0\nt_max = 5\npoints = 201\n\n[concurrence]\nstate = psi\n"});
            }
        }
    } else if (id == "3a") {
        for (const char* kind : kinds) {
            for (bool corr : {true, false}) {
                text += render({name("fig3a", kStrong, kind, corr), kind, kStrong, corr, "coherence, delta",
                                "[pulses]\nmode = total\nt_total = 2\nn_min = 1\nn_max = 100\n"});
            }
        }
    } else if (id == "3b") {
        for (const char* kind : kinds) {
            for (bool corr : {true, false}) {
                text += render({name("fig3b", kWeak, kind, corr), kind, kWeak, corr, "delta, coherence",
                                "[pulses]\nmode = interval\ntau = 0.15\nn_min = 1\nn_max = 33\n"});
            }
        }
    } else if (id == "4") {
        const std::string sweep =
            "[pulses]\nmode = sweep\ntau_min = 0.05\ntau_max = 0.5\ntau_points = 46\nn_min = 1\nn_max = 200\n"
            "n_step = 1\n";
        for (const char* kind : kinds) {
            for (bool corr : {true, false}) {
                text += render({name("fig4", kWeak, kind, corr), kind, kWeak, corr, "crossover_map, tau_star", sweep});
            }
        }
        Block zero{"fig4_weak_spin_uncorr_zero_temperature", "spin", kWeak, false, "crossover_map", sweep};
        zero.beta = "inf";
        text += render(zero);
    } else {
        throw InvalidParameter("unknown preset '" + std::string(id) + "' (expected 1, 2, 3a, 3b or 4)");
    }
    return text;
}

}  // namespace dephase::scenario
