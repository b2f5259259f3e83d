#include "cyclesim/builder.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cyclesim/errors.h"

namespace cyclesim {

namespace {

std::size_t half_factorial(int m) {
    std::size_t f = 1;
    for (int k = 3; k <= m; ++k) {
        f *= static_cast<std::size_t>(k);
    }
    return f;
}

}  // namespace

bool ProbabilityLedger::levels_ok() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const LevelRecord &e) {
        return e.p == ExactProb(Rational(2, e.m - 1)) && e.terms_after == half_factorial(e.m);
    });
}

int ProbabilityLedger::total_sub_ops() const {
    int total = 0;
    for (const LevelRecord &e : entries_) {
        total += e.sub_ops;
    }
    return total;
}

void AncillaPool::acquire(int width) {
    current_ = width;
    if (mode_ == AncillaMode::kReuse) {
        if (width > pool_bits_) {
            allocated_bits_ += width - pool_bits_;
            pool_bits_ = width;
        }
        live_bits_ = width;
    } else {
        allocated_bits_ += width;
        live_bits_ += width;
        retained_.push_back(width);
    }
    peak_live_bits_ = std::max(peak_live_bits_, live_bits_);
}

void AncillaPool::release() {
    if (mode_ == AncillaMode::kReuse) {
        live_bits_ -= current_;
    }
    current_ = 0;
}

Expansion expand_level(const SparseState &s, int m, Variant variant) {
    if (s.ancilla_width() != 0 || s.level() != m) {
        throw WidthMismatch("expand_level: expected a level-" + std::to_string(m) + " state without ancilla");
    }
    SparseState with_ancilla = attach_ancilla_uniform(s, m);
    if (variant == Variant::kProjector) {
        Projection r = project_ancilla_zero(apply_um(with_ancilla, m));
        return {std::move(r.post), r.p};
    }
    Projection r = project_aux_one(apply_um_aux(attach_aux(with_ancilla), m));
    return {detach_ancilla(r.post), r.p};
}

std::size_t peak_live_terms(int n) {
    std::size_t peak = 1;
    for (int m = 3; m < n; ++m) {
        peak = std::max(peak, half_factorial(m - 1) * static_cast<std::size_t>(edges_among(m)));
        peak = std::max(peak, half_factorial(m));
    }
    return peak;
}

BuildResult build_superposition(int n, const BuildOptions &options) {
    if (n < 3) {
        throw std::invalid_argument("build needs n >= 3, got " + std::to_string(n));
    }
    if (n > 20) {
        throw CapacityExceeded("n=" + std::to_string(n) + " is far beyond any term budget");
    }
    if (std::size_t peak = peak_live_terms(n); peak > options.term_budget) {
        throw CapacityExceeded("building n=" + std::to_string(n) + " needs " + std::to_string(peak) +
                               " live terms, budget is " + std::to_string(options.term_budget));
    }
    if (n > kMaxVertices) {
        throw CapacityExceeded("path register for n=" + std::to_string(n) + " exceeds 64 bits");
    }
    BuildResult result{initial_state(n), {}, AncillaPool(options.ancilla_mode)};
    for (int m = 3; m < n; ++m) {
        const std::size_t before = result.state.size();
        result.ancillae.acquire(edges_among(m));
        Expansion step = expand_level(result.state, m, options.variant);
        result.ancillae.release();
        result.ledger.record({m, step.p, before, step.state.size(), edges_among(m)});
        result.state = std::move(step.state);
    }
    return result;
}

Rational expected_measurement_cost(int n) {
    if (n < 4) {
        throw std::invalid_argument("measurement cost defined for n >= 4");
    }
    Rational total(0);
    for (int m = 4; m <= n; ++m) {
        total += Rational(m - 1, 2);
    }
    return total;
}

SparseState reverse_level(const SparseState &s, int m) {
    return apply_um_dagger(attach_ancilla_zero(s, m), m);
}

Expansion phase_scramble_then_expand(const SparseState &s, int m, std::span<const int> signs, Variant variant) {
    return expand_level(apply_signs(s, signs), m, variant);
}

LevelTrace trace_level(int n, int m) {
    if (m < 3 || m >= n) {
        throw std::invalid_argument("trace level must satisfy 3 <= level < n");
    }
    SparseState input = widen(build_superposition(m, {}).state, n);

    LevelTrace trace{m, {}, 0, 0, ExactProb(Rational(0)), Rational(0), Rational(0)};
    SparseState after = apply_um(attach_ancilla_uniform(input, m), m, &trace.gates);
    for (const Term &t : after.terms()) {
        (t.label.ancilla == 0 ? trace.fired_terms : trace.residual_terms) += 1;
    }
    const WideInt norm = after.norm_sq();
    WideInt good = 0;
    for (const Term &t : after.terms()) {
        if (t.label.ancilla == 0) {
            good += static_cast<WideInt>(t.c) * t.c;
        }
    }
    trace.good = ExactProb::from_weights(good, norm);
    trace.residual = Rational(1) - trace.good.value();
    const Coefficient c = after.terms().front().c;
    trace.term_weight = Rational(static_cast<WideInt>(c) * c, norm);
    return trace;
}

double sample_mean_repetitions(const SparseState &after_um, int trials, std::uint64_t seed) {
    if (trials <= 0) {
        throw std::invalid_argument("trials must be positive");
    }
    std::vector<std::uint64_t> cumulative;
    std::vector<bool> success;
    std::uint64_t total = 0;
    for (const Term &t : after_um.terms()) {
        total += static_cast<std::uint64_t>(t.c * t.c);
        cumulative.push_back(total);
        success.push_back(t.label.ancilla == 0);
    }
    if (std::find(success.begin(), success.end(), true) == success.end()) {
        throw ZeroProbability("no term has an all-zero ancilla");
    }
    std::mt19937_64 rng(seed);
    std::uint64_t draws = 0;
    for (int trial = 0; trial < trials; ++trial) {
        while (true) {
            ++draws;
            std::uint64_t u = rng() % total;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            if (success[static_cast<std::size_t>(it - cumulative.begin())]) {
                break;
            }
        }
    }
    return static_cast<double>(draws) / trials;
}

std::vector<RepetitionSample> sample_repetitions(int n, int trials, std::uint64_t seed) {
    std::vector<RepetitionSample> out;
    SparseState state = initial_state(n);
    for (int m = 3; m < n; ++m) {
        SparseState after = apply_um(attach_ancilla_uniform(state, m), m);
        double mean = sample_mean_repetitions(after, trials, seed + static_cast<std::uint64_t>(m));
        out.push_back({m, trials, mean, Rational(m - 1, 2)});
        state = project_ancilla_zero(after).post;
    }
    return out;
}

}  // namespace cyclesim
