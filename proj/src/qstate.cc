#include "cyclesim/qstate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyclesim/errors.h"

namespace cyclesim {

namespace {

std::uint64_t low_bits(int width) { return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1; }

void require_no_ancilla(const SparseState &s, const char *op) {
    if (s.ancilla_width() != 0) {
        throw WidthMismatch(std::string(op) + ": state already carries an ancilla of width " +
                            std::to_string(s.ancilla_width()));
    }
}

void require_ancilla(const SparseState &s, const char *op) {
    if (s.ancilla_width() == 0) {
        throw WidthMismatch(std::string(op) + ": state has no ancilla attached");
    }
}

}  // namespace

SparseState::SparseState(int n, int level, int ancilla_width, bool has_aux, std::vector<Term> terms)
    : n_(n), level_(level), ancilla_width_(ancilla_width), has_aux_(has_aux), terms_(std::move(terms)) {
    if (n < 3 || n > kMaxVertices) {
        throw CapacityExceeded("state register supports 3.." + std::to_string(kMaxVertices) + " vertices, got " +
                               std::to_string(n));
    }
    if (level < 3 || level > n) {
        throw std::invalid_argument("level " + std::to_string(level) + " outside 3.." + std::to_string(n));
    }
    if (ancilla_width < 0 || ancilla_width > 64) {
        throw WidthMismatch("ancilla width " + std::to_string(ancilla_width) + " outside 0..64");
    }
    const std::uint64_t path_limit = ~low_bits(path_width());
    const std::uint64_t ancilla_limit = ~low_bits(ancilla_width);
    for (const Term &t : terms_) {
        if (t.label.path & path_limit) {
            throw WidthMismatch("term path has bits beyond position " + std::to_string(path_width()));
        }
        if (t.label.ancilla & ancilla_limit) {
            throw WidthMismatch("term ancilla has bits beyond width " + std::to_string(ancilla_width));
        }
        if (has_aux != (t.label.aux != AuxBit::kAbsent)) {
            throw WidthMismatch(has_aux ? "term is missing its aux bit" : "term carries an unexpected aux bit");
        }
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.label < b.label; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const Term &t : terms_) {
        if (!merged.empty() && merged.back().label == t.label) {
            merged.back().c += t.c;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term &t) { return t.c == 0; });
    if (merged.empty()) {
        throw std::invalid_argument("state has no nonzero terms");
    }
    terms_ = std::move(merged);
}

WideInt SparseState::norm_sq() const {
    WideInt total = 0;
    for (const Term &t : terms_) {
        total += static_cast<WideInt>(t.c) * t.c;
    }
    return total;
}

std::vector<PathMask> SparseState::support() const {
    std::vector<PathMask> out;
    out.reserve(terms_.size());
    for (const Term &t : terms_) {
        out.push_back(path_mask(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double SparseState::amplitude(const Term &term) const {
    return static_cast<double>(term.c) / std::sqrt(static_cast<double>(norm_sq()));
}

bool SparseState::same_registers(const SparseState &other) const {
    return n_ == other.n_ && ancilla_width_ == other.ancilla_width_ && has_aux_ == other.has_aux_;
}

bool SparseState::operator==(const SparseState &other) const {
    if (!same_registers(other) || level_ != other.level_ || terms_.size() != other.terms_.size()) {
        return false;
    }
    return std::equal(terms_.begin(), terms_.end(), other.terms_.begin(),
                      [](const Term &a, const Term &b) { return a.label == b.label && a.c == b.c; });
}

SparseState initial_state(int n) {
    return SparseState(n, 3, 0, false, {Term{BasisLabel{0b111, 0, AuxBit::kAbsent}, 1}});
}

SparseState attach_ancilla_uniform(const SparseState &s, int m) {
    require_no_ancilla(s, "attach_ancilla_uniform");
    if (s.level() != m) {
        throw WidthMismatch("attach_ancilla_uniform: state is at level " + std::to_string(s.level()) +
                            ", not " + std::to_string(m));
    }
    const int width = edges_among(m);
    std::vector<Term> out;
    out.reserve(s.size() * static_cast<std::size_t>(width));
    for (const Term &t : s.terms()) {
        for (int l = 0; l < width; ++l) {
            Term u = t;
            u.label.ancilla = std::uint64_t{1} << l;
            out.push_back(u);
        }
    }
    return SparseState(s.vertices(), m, width, s.has_aux(), std::move(out));
}

SparseState attach_ancilla_zero(const SparseState &s, int m) {
    require_no_ancilla(s, "attach_ancilla_zero");
    if (s.level() != m + 1) {
        throw WidthMismatch("attach_ancilla_zero: state is at level " + std::to_string(s.level()) +
                            ", expected " + std::to_string(m + 1));
    }
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    return SparseState(s.vertices(), m, edges_among(m), s.has_aux(), std::move(out));
}

SparseState widen(const SparseState &s, int n) {
    if (n < s.vertices()) {
        throw WidthMismatch("cannot narrow a register of " + std::to_string(s.vertices()) + " vertices to " +
                            std::to_string(n));
    }
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    return SparseState(n, s.level(), s.ancilla_width(), s.has_aux(), std::move(out));
}

SparseState attach_aux(const SparseState &s) {
    if (s.has_aux()) {
        throw WidthMismatch("attach_aux: state already carries an aux bit");
    }
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    for (Term &t : out) {
        t.label.aux = AuxBit::kZero;
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), true, std::move(out));
}

SparseState detach_ancilla(const SparseState &s) {
    require_ancilla(s, "detach_ancilla");
    for (const Term &t : s.terms()) {
        if (t.label.ancilla != 0) {
            throw std::invalid_argument("detach_ancilla: term " + format_ket(s, t.label) + " has a set ancilla bit");
        }
    }
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    return SparseState(s.vertices(), s.level() + 1, 0, s.has_aux(), std::move(out));
}

namespace {

template <typename Keep>
Projection project(const SparseState &s, const char *what, Keep keep, int level, int ancilla_width, bool has_aux,
                   bool strip_aux) {
    WideInt total = 0;
    WideInt kept_weight = 0;
    std::vector<Term> kept;
    for (const Term &t : s.terms()) {
        WideInt w = static_cast<WideInt>(t.c) * t.c;
        total += w;
        if (keep(t.label)) {
            kept_weight += w;
            Term u = t;
            if (strip_aux) {
                u.label.aux = AuxBit::kAbsent;
            }
            kept.push_back(u);
        }
    }
    if (kept.empty()) {
        throw ZeroProbability(std::string("no term has ") + what);
    }
    return Projection{ExactProb::from_weights(kept_weight, total),
                      SparseState(s.vertices(), level, ancilla_width, has_aux, std::move(kept))};
}

}  // namespace

Projection project_ancilla_zero(const SparseState &s) {
    require_ancilla(s, "project_ancilla_zero");
    return project(
        s, "an all-zero ancilla", [](const BasisLabel &b) { return b.ancilla == 0; }, s.level() + 1, 0, s.has_aux(),
        false);
}

Projection project_aux_one(const SparseState &s) {
    if (!s.has_aux()) {
        throw WidthMismatch("project_aux_one: state carries no aux bit");
    }
    return project(
        s, "aux = 1", [](const BasisLabel &b) { return b.aux == AuxBit::kOne; }, s.level(), s.ancilla_width(), false,
        true);
}

Rational inner_product(const SparseState &a, const SparseState &b) {
    if (!a.same_registers(b)) {
        throw WidthMismatch("inner_product: register widths differ");
    }
    WideInt overlap = 0;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        if (ia->label == ib->label) {
            overlap += static_cast<WideInt>(ia->c) * ib->c;
            ++ia;
            ++ib;
        } else if (ia->label < ib->label) {
            ++ia;
        } else {
            ++ib;
        }
    }
    WideInt magnitude = overlap < 0 ? -overlap : overlap;
    // Cancel against each norm separately so the 128-bit products stay in range.
    Rational left(magnitude, a.norm_sq());
    Rational right(magnitude, b.norm_sq());
    Rational square = left * right;
    return overlap < 0 ? -square : square;
}

SparseState apply_signs(const SparseState &s, std::span<const int> signs) {
    if (signs.size() != s.size()) {
        throw std::invalid_argument("apply_signs: " + std::to_string(signs.size()) + " signs for " +
                                    std::to_string(s.size()) + " terms");
    }
    std::vector<Term> out(s.terms().begin(), s.terms().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) {
            throw std::invalid_argument("apply_signs: sign must be +1 or -1");
        }
        out[i].c *= signs[i];
    }
    return SparseState(s.vertices(), s.level(), s.ancilla_width(), s.has_aux(), std::move(out));
}

std::string format_ket(const SparseState &s, const BasisLabel &label) {
    std::string out;
    if (s.ancilla_width() > 0) {
        out += "|" + bits_to_string(label.ancilla, s.ancilla_width()) + ">";
    }
    out += "|" + bits_to_grouped(label.path, s.path_width()) + ">";
    if (label.aux != AuxBit::kAbsent) {
        out += label.aux == AuxBit::kOne ? "|1>" : "|0>";
    }
    return out;
}

}  // namespace cyclesim
