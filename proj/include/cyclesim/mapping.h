#ifndef CYCLESIM_MAPPING_H
#define CYCLESIM_MAPPING_H

#include <cstdint>
#include <string>
#include <vector>

#include "cyclesim/encoding.h"
#include "cyclesim/qstate.h"

namespace cyclesim {

/// One four-bit involution of the level-m mapping.
///
/// Ancilla bit `l` selects edge `broken` = (a, b) of the input cycle. Vertex
/// m+1 is inserted there, replacing the edge by (m+1, b) at position `new_lo`
/// and (m+1, a) at position `new_hi`.
struct SubOpSpec {
    int m;
    int l;
    Edge broken;
    int new_lo;
    int new_hi;
};

SubOpSpec sub_op_spec(int m, int l);

/// Applies one sub-op to a label:
///   ancilla{l}=1, path{l}=1, path{i}=0, path{i'}=0  -> flip all four bits
///   ancilla{l}=0, path{l}=0, path{i}=1, path{i'}=1  -> flip all four bits
///   otherwise identity.
/// Returns true if the label changed.
bool apply_sub_op(BasisLabel &label, const SubOpSpec &spec);

/// Per-sub-op record of one application of U_m to a state.
struct GateTraceEntry {
    SubOpSpec spec;
    std::size_t fired;
};

/// "U[m,l]: break=(a,b) new=(i,i') fired=<count>"
std::string format_trace_line(const GateTraceEntry &entry);

/// Label-level form of U_m: the sub-ops for l = 1..m(m-1)/2, precomputed as masks.
class LevelMapping {
   public:
    explicit LevelMapping(int m);

    int level() const { return m_; }
    int ancilla_width() const { return edges_among(m_); }
    const std::vector<SubOpSpec> &sub_ops() const { return specs_; }

    /// Sub-ops in ascending l.
    BasisLabel forward(BasisLabel label) const;
    /// Sub-ops in descending l.
    BasisLabel backward(BasisLabel label) const;
    /// forward() with aux set to OR over l of (ancilla{l} AND path{l}) on the input label.
    BasisLabel forward_aux(BasisLabel label) const;

    struct Masks {
        std::uint64_t ancilla;
        std::uint64_t path_old;
        std::uint64_t path_new;
    };
    static Masks masks_for(const SubOpSpec &spec);
    static bool step(BasisLabel &label, const Masks &masks);

   private:
    int m_;
    std::vector<SubOpSpec> specs_;
    std::vector<Masks> masks_;
};

SparseState apply_sub_op(const SparseState &s, const SubOpSpec &spec);

/// U_m: sub-ops applied in ascending l. If `trace` is non-null one entry per
/// sub-op is appended with the number of terms that sub-op changed.
SparseState apply_um(const SparseState &s, int m, std::vector<GateTraceEntry> *trace = nullptr);

/// U_m^dagger: sub-ops applied in descending l.
SparseState apply_um_dagger(const SparseState &s, int m);

/// Computes aux on every term from its pre-gate label, then applies U_m.
/// Requires aux attached and zero on every term.
SparseState apply_um_aux(const SparseState &s, int m);

/// <row| U_m |col> in an n-vertex register, n >= m+1. Always 0 or 1.
int matrix_element(int n, int m, const BasisLabel &row, const BasisLabel &col);

}  // namespace cyclesim

#endif
