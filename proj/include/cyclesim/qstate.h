#ifndef CYCLESIM_QSTATE_H
#define CYCLESIM_QSTATE_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cyclesim/encoding.h"
#include "cyclesim/rational.h"

namespace cyclesim {

enum class AuxBit : std::int8_t { kAbsent = -1, kZero = 0, kOne = 1 };

/// One computational basis state: path register, ancilla register and the
/// optional auxiliary measurement bit. Registers are raw words; widths live on
/// the owning SparseState.
struct BasisLabel {
    std::uint64_t path = 0;
    std::uint64_t ancilla = 0;
    AuxBit aux = AuxBit::kAbsent;

    bool operator==(const BasisLabel &) const = default;
};

/// Serialization order: ancilla string, then path string, then aux.
inline bool operator<(const BasisLabel &a, const BasisLabel &b) {
    if (a.ancilla != b.ancilla) {
        return bit_string_less(a.ancilla, b.ancilla);
    }
    if (a.path != b.path) {
        return bit_string_less(a.path, b.path);
    }
    return a.aux < b.aux;
}

using Coefficient = std::int64_t;

struct Term {
    BasisLabel label;
    Coefficient c;
};

/// Sparse real state vector with integer coefficients.
///
/// The physical amplitude of a term is c / sqrt(norm_sq()). Every operation in
/// the construction (basis permutations, uniform tensor factors, projections)
/// maps integer coefficients to integer coefficients, so nothing here is
/// approximated. Terms are kept sorted by label; duplicate labels are merged and
/// zero coefficients dropped on construction.
///
/// `level` is the number of vertices the path register currently spans. While
/// an ancilla of width m(m-1)/2 is attached the state is at level m; detaching a
/// cleared ancilla promotes it to level m+1.
class SparseState {
   public:
    SparseState(int n, int level, int ancilla_width, bool has_aux, std::vector<Term> terms);

    int vertices() const { return n_; }
    int path_width() const { return edges_among(n_); }
    int level() const { return level_; }
    int ancilla_width() const { return ancilla_width_; }
    bool has_aux() const { return has_aux_; }

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    WideInt norm_sq() const;
    PathMask path_mask(const Term &term) const { return PathMask(n_, term.label.path); }
    /// Distinct path masks carried by the terms, sorted.
    std::vector<PathMask> support() const;
    /// Amplitude c / sqrt(norm) for export; never used for internal arithmetic.
    double amplitude(const Term &term) const;

    bool same_registers(const SparseState &other) const;
    bool operator==(const SparseState &other) const;

   private:
    int n_;
    int level_;
    int ancilla_width_;
    bool has_aux_;
    std::vector<Term> terms_;
};

/// The 3-cycle |1 11 0...0> as a single term in an n-vertex register.
SparseState initial_state(int n);

/// Tensors the state with the uniform superposition of the m(m-1)/2 unit
/// ancilla states. Every term becomes one term per unit state, same coefficient.
SparseState attach_ancilla_uniform(const SparseState &s, int m);

/// Tensors a level-(m+1) state with an all-zero ancilla of width m(m-1)/2.
SparseState attach_ancilla_zero(const SparseState &s, int m);

/// Same terms in a register of n >= s.vertices() vertices.
SparseState widen(const SparseState &s, int n);

/// Adds aux = 0 to every term.
SparseState attach_aux(const SparseState &s);

/// Drops an all-zero ancilla and moves the state to the next level.
/// Throws std::invalid_argument if some term has a set ancilla bit.
SparseState detach_ancilla(const SparseState &s);

struct Projection {
    ExactProb p;
    SparseState post;
};

/// Post-selects the all-zero ancilla outcome and detaches the ancilla.
/// Coefficients are not rescaled; the amplitude convention renormalizes.
Projection project_ancilla_zero(const SparseState &s);

/// Post-selects aux = 1 and strips the aux bit. The ancilla stays attached.
Projection project_aux_one(const SparseState &s);

/// Signed square of the overlap, sign(S) * S^2 / (N_a N_b) with
/// S = sum over shared labels of c_a c_b.
Rational inner_product(const SparseState &a, const SparseState &b);

/// Multiplies the coefficient of the i-th term (in label order) by signs[i] = +-1.
SparseState apply_signs(const SparseState &s, std::span<const int> signs);

/// "|<ancilla>>|<grouped path>>" followed by "|<aux>>" when present.
std::string format_ket(const SparseState &s, const BasisLabel &label);

}  // namespace cyclesim

#endif
