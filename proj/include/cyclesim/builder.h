#ifndef CYCLESIM_BUILDER_H
#define CYCLESIM_BUILDER_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclesim/mapping.h"
#include "cyclesim/qstate.h"
#include "cyclesim/rational.h"

namespace cyclesim {

/// How the ancilla outcome is post-selected: directly on the ancilla register,
/// or on an auxiliary bit computed alongside U_m.
enum class Variant { kProjector, kAux };

/// kReuse clears and detaches one growing ancilla register after each level;
/// kRetain allocates a fresh register per level and keeps it.
enum class AncillaMode { kReuse, kRetain };

inline constexpr std::size_t kDefaultTermBudget = 10'000'000;

struct LevelRecord {
    int m;
    ExactProb p;
    std::size_t terms_before;
    std::size_t terms_after;
    /// Number of U_m^l gates applied at this level.
    int sub_ops;

    Rational expected_repetitions() const { return p.expected_repetitions(); }
};

class ProbabilityLedger {
   public:
    void record(const LevelRecord &entry) { entries_.push_back(entry); }
    const std::vector<LevelRecord> &entries() const { return entries_; }

    /// Every entry has p = 2/(m-1) and terms_after = m!/2.
    bool levels_ok() const;
    int total_sub_ops() const;

   private:
    std::vector<LevelRecord> entries_;
};

/// Bookkeeping of ancilla qubits over a build.
class AncillaPool {
   public:
    explicit AncillaPool(AncillaMode mode) : mode_(mode) {}

    /// Claims a register of `width` bits for one level.
    void acquire(int width);
    /// Releases the register claimed by the last acquire (reuse mode only returns it to the pool).
    void release();

    AncillaMode mode() const { return mode_; }
    /// Distinct ancilla bits ever allocated.
    int allocated_bits() const { return allocated_bits_; }
    /// Maximum ancilla bits alive at the same time.
    int peak_live_bits() const { return peak_live_bits_; }
    /// Widths of the registers kept in retain mode, in level order.
    const std::vector<int> &retained() const { return retained_; }

   private:
    AncillaMode mode_;
    int pool_bits_ = 0;
    int live_bits_ = 0;
    int allocated_bits_ = 0;
    int peak_live_bits_ = 0;
    int current_ = 0;
    std::vector<int> retained_;
};

struct Expansion {
    SparseState state;
    ExactProb p;
};

/// Attaches the uniform unit ancilla, applies U_m (or its aux extension) and
/// post-selects. The result is at level m+1 with the ancilla detached.
Expansion expand_level(const SparseState &s, int m, Variant variant = Variant::kProjector);

struct BuildOptions {
    Variant variant = Variant::kProjector;
    AncillaMode ancilla_mode = AncillaMode::kReuse;
    std::size_t term_budget = kDefaultTermBudget;
};

struct BuildResult {
    SparseState state;
    ProbabilityLedger ledger;
    AncillaPool ancillae;
};

/// Largest number of terms alive at once while building up to n vertices.
std::size_t peak_live_terms(int n);

/// Uniform superposition of all (n-1)!/2 Hamiltonian cycles on n vertices.
/// Throws CapacityExceeded if the build would exceed the term budget or the
/// 64-bit path register.
BuildResult build_superposition(int n, const BuildOptions &options = {});

/// Mean measurement time, in units of one ancilla measurement, summed as
/// (m-1)/2 over m = 4..n.
Rational expected_measurement_cost(int n);

/// Attaches an all-zero ancilla to a level-(m+1) state and applies U_m^dagger.
/// No measurement is performed.
SparseState reverse_level(const SparseState &s, int m);

/// Multiplies the term coefficients by `signs` (label order), then expands.
Expansion phase_scramble_then_expand(const SparseState &s, int m, std::span<const int> signs,
                                     Variant variant = Variant::kProjector);

/// Split of U_m applied to the uniform level-m state into fired and residual parts.
struct LevelTrace {
    int m;
    std::vector<GateTraceEntry> gates;
    std::size_t fired_terms;
    std::size_t residual_terms;
    /// Squared-norm fraction on the all-zero ancilla.
    ExactProb good;
    Rational residual;
    /// Squared amplitude of each term after U_m.
    Rational term_weight;
};

LevelTrace trace_level(int n, int m);

struct RepetitionSample {
    int m;
    int trials;
    double mean;
    /// Theoretical mean, 1/P_m.
    Rational expected;
};

/// Draws ancilla measurement outcomes from |amplitude|^2 of `after_um` until the
/// all-zero outcome appears; returns the mean number of draws over `trials`.
/// Deterministic given the generator state.
double sample_mean_repetitions(const SparseState &after_um, int trials, std::uint64_t seed);

/// Monte-Carlo repetition counts for every level m = 3..n-1 of a build.
std::vector<RepetitionSample> sample_repetitions(int n, int trials, std::uint64_t seed);

}  // namespace cyclesim

#endif
