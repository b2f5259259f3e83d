#ifndef CYCLESIM_ORACLE_H
#define CYCLESIM_ORACLE_H

#include <cstdint>
#include <span>
#include <vector>

#include "cyclesim/encoding.h"
#include "cyclesim/qstate.h"

namespace cyclesim {

inline constexpr int kMaxOracleVertices = 10;

/// Symmetric integer edge weights with a zero diagonal.
class WeightMatrix {
   public:
    /// Row-major n*n entries. Throws ValidationError naming the first offending cell.
    WeightMatrix(int n, std::vector<std::int64_t> entries);

    int vertices() const { return n_; }
    /// Weight of edge {i, k}, 1-based.
    std::int64_t at(int i, int k) const {
        return w_[static_cast<std::size_t>((i - 1) * n_ + (k - 1))];
    }

   private:
    int n_;
    std::vector<std::int64_t> w_;
};

/// All Hamiltonian cycles over vertices 1..m, encoded in an n-vertex register.
/// Enumerates permutations of 2..m with vertex 1 fixed and keeps one orientation
/// of each. Sorted by mask. Does not use the insertion construction.
std::vector<PathMask> enumerate_cycles(int m, int n);
inline std::vector<PathMask> enumerate_cycles(int m) { return enumerate_cycles(m, m); }

/// Sum of the weights of the set edges of a cycle mask.
std::int64_t tour_weight(const PathMask &mask, const WeightMatrix &w);

/// Closed-tour weight of a vertex sequence: w(t_n, t_1) + sum w(t_k, t_k+1).
std::int64_t tour_weight(std::span<const int> tour, const WeightMatrix &w);

struct TourResult {
    PathMask mask;
    std::int64_t weight;
    bool operator==(const TourResult &) const = default;
};

/// Minimum over every cycle of the oracle enumeration. Ties go to the smallest mask.
TourResult min_tour_exhaustive(const WeightMatrix &w);

/// Minimum over the path masks carried by a full-level state. Ties go to the smallest mask.
TourResult min_tour_from_state(const WeightMatrix &w, const SparseState &state);

}  // namespace cyclesim

#endif
