#include "cyclesim/mapping.h"

#include <stdexcept>

#include "cyclesim/errors.h"

namespace cyclesim {

namespace {

std::uint64_t bit_at(int position) { return std::uint64_t{1} << (position - 1); }

void check_registers(const SparseState &s, int m, const char *op) {
    if (m < 3) {
        throw std::invalid_argument(std::string(op) + ": level must be >= 3");
    }
    if (s.ancilla_width() != edges_among(m)) {
        throw WidthMismatch(std::string(op) + ": ancilla width " + std::to_string(s.ancilla_width()) +
                            " does not match level " + std::to_string(m) + " (expected " +
                            std::to_string(edges_among(m)) + ")");
    }
    if (s.vertices() < m + 1) {
        throw WidthMismatch(std::string(op) + ": register of " + std::to_string(s.vertices()) +
                            " vertices cannot hold level " + std::to_string(m + 1));
    }
}

}  // namespace

SubOpSpec sub_op_spec(int m, int l) {
    if (m < 3 || l < 1 || l > edges_among(m)) {
        throw std::invalid_argument("sub-op U[" + std::to_string(m) + "," + std::to_string(l) + "] out of range");
    }
    Edge broken = index_to_edge(l);
    return SubOpSpec{m, l, broken, edge_to_index(m + 1, broken.lo), edge_to_index(m + 1, broken.hi)};
}

bool LevelMapping::step(BasisLabel &label, const Masks &masks) {
    const std::uint64_t a = label.ancilla & masks.ancilla;
    const std::uint64_t old_edge = label.path & masks.path_old;
    const std::uint64_t new_edges = label.path & masks.path_new;
    const bool forward = a != 0 && old_edge != 0 && new_edges == 0;
    const bool reverse = a == 0 && old_edge == 0 && new_edges == masks.path_new;
    if (!forward && !reverse) {
        return false;
    }
    label.ancilla ^= masks.ancilla;
    label.path ^= masks.path_old | masks.path_new;
    return true;
}

LevelMapping::Masks LevelMapping::masks_for(const SubOpSpec &spec) {
    return {bit_at(spec.l), bit_at(spec.l), bit_at(spec.new_lo) | bit_at(spec.new_hi)};
}

bool apply_sub_op(BasisLabel &label, const SubOpSpec &spec) {
    return LevelMapping::step(label, LevelMapping::masks_for(spec));
}

LevelMapping::LevelMapping(int m) : m_(m) {
    if (m < 3 || edges_among(m + 1) > 64) {
        throw std::invalid_argument("level mapping defined for 3 <= m <= " + std::to_string(kMaxVertices - 1));
    }
    for (int l = 1; l <= edges_among(m); ++l) {
        SubOpSpec spec = sub_op_spec(m, l);
        specs_.push_back(spec);
        masks_.push_back(masks_for(spec));
    }
}

BasisLabel LevelMapping::forward(BasisLabel label) const {
    for (const Masks &masks : masks_) {
        step(label, masks);
    }
    return label;
}

BasisLabel LevelMapping::backward(BasisLabel label) const {
    for (auto it = masks_.rbegin(); it != masks_.rend(); ++it) {
        step(label, *it);
    }
    return label;
}

BasisLabel LevelMapping::forward_aux(BasisLabel label) const {
    if (label.aux != AuxBit::kZero) {
        throw std::invalid_argument("apply_um_aux: aux bit must start at 0");
    }
    const std::uint64_t window = masks_.empty() ? 0 : (masks_.back().ancilla << 1) - 1;
    label.aux = (label.ancilla & label.path & window) != 0 ? AuxBit::kOne : AuxBit::kZero;
    return forward(label);
}

std::string format_trace_line(const GateTraceEntry &entry) {
    const SubOpSpec &s = entry.spec;
    return "U[" + std::to_string(s.m) + "," + std::to_string(s.l) + "]: break=(" + std::to_string(s.broken.hi) + "," +
           std::to_string(s.broken.lo) + ") new=(" + std::to_string(s.new_lo) + "," + std::to_string(s.new_hi) +
           ") fired=" + std::to_string(entry.fired);
}

SparseState apply_sub_op(const SparseState &s, const SubOpSpec &spec) {
    check_registers(s, spec.m, "apply_sub_op");
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    for (Term &t : out) {
        apply_sub_op(t.label, spec);
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), s.has_aux(), std::move(out));
}

SparseState apply_um(const SparseState &s, int m, std::vector<GateTraceEntry> *trace) {
    check_registers(s, m, "apply_um");
    LevelMapping mapping(m);
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    if (trace == nullptr) {
        for (Term &t : out) {
            t.label = mapping.forward(t.label);
        }
    } else {
        // Sub-op by sub-op over the whole state, so fired counts are per gate.
        for (const SubOpSpec &spec : mapping.sub_ops()) {
            std::size_t fired = 0;
            for (Term &t : out) {
                fired += apply_sub_op(t.label, spec) ? 1 : 0;
            }
            trace->push_back({spec, fired});
        }
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), s.has_aux(), std::move(out));
}

SparseState apply_um_dagger(const SparseState &s, int m) {
    check_registers(s, m, "apply_um_dagger");
    LevelMapping mapping(m);
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    for (Term &t : out) {
        t.label = mapping.backward(t.label);
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), s.has_aux(), std::move(out));
}

SparseState apply_um_aux(const SparseState &s, int m) {
    check_registers(s, m, "apply_um_aux");
    if (!s.has_aux()) {
        throw WidthMismatch("apply_um_aux: state carries no aux bit");
    }
    LevelMapping mapping(m);
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    for (Term &t : out) {
        t.label = mapping.forward_aux(t.label);
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), true, std::move(out));
}

int matrix_element(int n, int m, const BasisLabel &row, const BasisLabel &col) {
    SparseState column(n, m, edges_among(m), col.aux != AuxBit::kAbsent, {Term{col, 1}});
    SparseState image = apply_um(column, m);
    const Term &t = image.terms().front();
    return t.label == row ? static_cast<int>(t.c) : 0;
}

}  // namespace cyclesim
