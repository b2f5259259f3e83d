#include "cyclesim/verify.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cyclesim/builder.h"
#include "cyclesim/mapping.h"
#include "cyclesim/oracle.h"

namespace cyclesim {

const std::vector<std::string> kExampleOneKets = {
    "|000>|0 11 110>",
    "|000>|1 01 101>",
    "|000>|1 10 011>",
};

namespace {

std::uint64_t low_mask(int width) { return (std::uint64_t{1} << width) - 1; }

}  // namespace

PermutationCheck check_um_permutation_exhaustive(int m) {
    const LevelMapping mapping(m);
    const int path_bits = edges_among(m + 1);
    const int ancilla_bits = edges_among(m);
    if (path_bits + ancilla_bits > 30) {
        throw std::invalid_argument("exhaustive permutation check is limited to 2^30 labels");
    }
    PermutationCheck check;
    std::vector<std::uint64_t> images;
    images.reserve(std::size_t{1} << (path_bits + ancilla_bits));
    for (std::uint64_t path = 0; path <= low_mask(path_bits); ++path) {
        for (std::uint64_t ancilla = 0; ancilla <= low_mask(ancilla_bits); ++ancilla) {
            const BasisLabel in{path, ancilla, AuxBit::kAbsent};
            const BasisLabel out = mapping.forward(in);
            ++check.labels;
            if ((out.path & ~low_mask(path_bits)) != 0 || (out.ancilla & ~low_mask(ancilla_bits)) != 0 ||
                mapping.backward(out) != in) {
                ++check.violations;
            }
            images.push_back(out.path << ancilla_bits | out.ancilla);
        }
    }
    std::sort(images.begin(), images.end());
    check.violations += static_cast<std::size_t>(images.end() - std::unique(images.begin(), images.end()));
    return check;
}

PermutationCheck check_um_inverse_sampled(int m, std::size_t samples, std::uint64_t seed) {
    const LevelMapping mapping(m);
    const int path_bits = edges_among(m + 1);
    const int ancilla_bits = edges_among(m);
    std::mt19937_64 rng(seed);
    PermutationCheck check;
    for (std::size_t i = 0; i < samples; ++i) {
        const BasisLabel in{rng() & low_mask(path_bits), rng() & low_mask(ancilla_bits), AuxBit::kAbsent};
        const BasisLabel out = mapping.forward(in);
        ++check.labels;
        if ((out.path & ~low_mask(path_bits)) != 0 || (out.ancilla & ~low_mask(ancilla_bits)) != 0 ||
            mapping.backward(out) != in) {
            ++check.violations;
        }
    }
    return check;
}

std::vector<CheckResult> run_verification(int n) {
    if (n < 3 || n > 8) {
        throw std::invalid_argument("verify supports 3 <= n <= 8, got " + std::to_string(n));
    }
    std::vector<CheckResult> results;
    auto add = [&](std::string name, bool pass, std::string detail) {
        results.push_back({std::move(name), pass, std::move(detail)});
    };

    const BuildResult built = build_superposition(n);
    const SparseState &state = built.state;

    const std::vector<PathMask> expected = enumerate_cycles(n);
    const std::vector<PathMask> support = state.support();
    add("oracle_equivalence", support == expected && support.size() == state.size(),
        "state masks=" + std::to_string(support.size()) + " oracle masks=" + std::to_string(expected.size()));

    const Coefficient c0 = state.terms().front().c;
    const bool uniform = c0 > 0 && std::all_of(state.terms().begin(), state.terms().end(),
                                               [&](const Term &t) { return t.c == c0; });
    add("uniformity", uniform, "terms=" + std::to_string(state.size()) + " coefficient=" + std::to_string(c0));

    std::string probs;
    for (const LevelRecord &e : built.ledger.entries()) {
        probs += (probs.empty() ? "" : " ") + ("m=" + std::to_string(e.m) + ":" + e.p.str());
    }
    add("probability_law", built.ledger.levels_ok(), probs.empty() ? "no levels" : probs);

    std::size_t labels = 0;
    std::size_t violations = 0;
    for (int m = 3; m < n; ++m) {
        PermutationCheck c = m <= 4 ? check_um_permutation_exhaustive(m) : check_um_inverse_sampled(m, 10000, 7);
        labels += c.labels;
        violations += c.violations;
    }
    add("unitarity", violations == 0,
        "labels=" + std::to_string(labels) + " violations=" + std::to_string(violations));

    bool aux_ok = true;
    SparseState level = initial_state(n);
    for (int m = 3; m < n; ++m) {
        Expansion proj = expand_level(level, m, Variant::kProjector);
        Expansion aux = expand_level(level, m, Variant::kAux);
        aux_ok = aux_ok && proj.p == aux.p && proj.state == aux.state;
        level = proj.state;
    }
    add("aux_equivalence", aux_ok, "levels=" + std::to_string(std::max(0, n - 3)));

    if (n >= 4) {
        const int m = n - 1;
        SparseState reversed = reverse_level(state, m);
        SparseState back = detach_ancilla(apply_um(reversed, m));
        bool every_term_moved = std::all_of(reversed.terms().begin(), reversed.terms().end(),
                                            [](const Term &t) { return t.label.ancilla != 0; });
        add("reversibility", back == state && every_term_moved,
            "reversed terms=" + std::to_string(reversed.size()));

        SparseState three = attach_ancilla_uniform(initial_state(4), 3);
        SparseState four = apply_um(three, 3);
        std::vector<std::string> kets;
        for (const Term &t : four.terms()) {
            kets.push_back(format_ket(four, t.label));
        }
        bool equal_c = std::all_of(four.terms().begin(), four.terms().end(), [](const Term &t) { return t.c == 1; });
        add("example_3_to_4_bit_exact", kets == kExampleOneKets && equal_c,
            [&] {
                std::string s;
                for (const auto &k : kets) {
                    s += (s.empty() ? "" : " + ") + k;
                }
                return s;
            }());
    } else {
        add("reversibility", true, "no levels to reverse");
    }
    return results;
}

}  // namespace cyclesim
