#include "cyclesim/oracle.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "cyclesim/errors.h"

namespace cyclesim {

WeightMatrix::WeightMatrix(int n, std::vector<std::int64_t> entries) : n_(n), w_(std::move(entries)) {
    if (n < 3) {
        throw ValidationError("weight matrix needs at least 3 vertices, got " + std::to_string(n));
    }
    if (w_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw ValidationError("weight matrix for n=" + std::to_string(n) + " needs " + std::to_string(n * n) +
                              " entries, got " + std::to_string(w_.size()));
    }
    for (int i = 1; i <= n; ++i) {
        if (at(i, i) != 0) {
            throw ValidationError("nonzero diagonal at row " + std::to_string(i) + ", column " + std::to_string(i) +
                                  ": " + std::to_string(at(i, i)));
        }
        for (int k = i + 1; k <= n; ++k) {
            if (at(i, k) != at(k, i)) {
                throw ValidationError("asymmetric weight at row " + std::to_string(i) + ", column " +
                                      std::to_string(k) + ": " + std::to_string(at(i, k)) + " vs " +
                                      std::to_string(at(k, i)) + " at row " + std::to_string(k) + ", column " +
                                      std::to_string(i));
            }
        }
    }
}

std::vector<PathMask> enumerate_cycles(int m, int n) {
    if (m < 3) {
        throw std::invalid_argument("cycles need at least 3 vertices");
    }
    if (m > kMaxOracleVertices) {
        throw CapacityExceeded("oracle enumeration is limited to " + std::to_string(kMaxOracleVertices) +
                               " vertices");
    }
    if (n < m) {
        throw std::invalid_argument("register of " + std::to_string(n) + " vertices cannot hold " +
                                    std::to_string(m));
    }
    // Position table built by walking the edge list in order, independent of the
    // closed-form index arithmetic.
    std::vector<std::vector<int>> position(static_cast<std::size_t>(m + 1), std::vector<int>(m + 1, 0));
    int next = 1;
    for (int hi = 2; hi <= m; ++hi) {
        for (int lo = 1; lo < hi; ++lo) {
            position[hi][lo] = next;
            position[lo][hi] = next;
            ++next;
        }
    }

    std::vector<int> rest(static_cast<std::size_t>(m - 1));
    std::iota(rest.begin(), rest.end(), 2);
    std::vector<PathMask> out;
    do {
        // Each undirected cycle appears twice, once per direction.
        if (rest.front() > rest.back()) {
            continue;
        }
        std::uint64_t bits = std::uint64_t{1} << (position[1][rest.front()] - 1);
        bits |= std::uint64_t{1} << (position[1][rest.back()] - 1);
        for (std::size_t j = 0; j + 1 < rest.size(); ++j) {
            bits |= std::uint64_t{1} << (position[rest[j]][rest[j + 1]] - 1);
        }
        out.emplace_back(n, bits);
    } while (std::next_permutation(rest.begin(), rest.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t tour_weight(const PathMask &mask, const WeightMatrix &w) {
    if (mask.highest() > edges_among(w.vertices())) {
        throw std::invalid_argument("mask has edges beyond the weight matrix's vertices");
    }
    decode_cycle(mask, w.vertices());
    std::int64_t total = 0;
    for (int l : mask.positions()) {
        Edge e = index_to_edge(l);
        total += w.at(e.hi, e.lo);
    }
    return total;
}

std::int64_t tour_weight(std::span<const int> tour, const WeightMatrix &w) {
    const std::size_t n = tour.size();
    if (n < 3) {
        throw std::invalid_argument("tour needs at least 3 vertices");
    }
    std::int64_t total = w.at(tour[n - 1], tour[0]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        total += w.at(tour[k], tour[k + 1]);
    }
    return total;
}

namespace {

template <typename Range>
TourResult min_over(const WeightMatrix &w, const Range &masks) {
    std::optional<TourResult> best;
    for (const PathMask &mask : masks) {
        std::int64_t weight = tour_weight(mask, w);
        if (!best || weight < best->weight || (weight == best->weight && mask < best->mask)) {
            best = TourResult{mask, weight};
        }
    }
    if (!best) {
        throw std::invalid_argument("no tours to minimize over");
    }
    return *best;
}

}  // namespace

TourResult min_tour_exhaustive(const WeightMatrix &w) {
    return min_over(w, enumerate_cycles(w.vertices()));
}

TourResult min_tour_from_state(const WeightMatrix &w, const SparseState &state) {
    if (state.vertices() != w.vertices() || state.level() != w.vertices() || state.ancilla_width() != 0) {
        throw WidthMismatch("state-sourced minimum needs a full-level state over " + std::to_string(w.vertices()) +
                            " vertices");
    }
    std::vector<PathMask> masks;
    masks.reserve(state.size());
    for (const Term &t : state.terms()) {
        masks.push_back(state.path_mask(t));
    }
    return min_over(w, masks);
}

}  // namespace cyclesim
