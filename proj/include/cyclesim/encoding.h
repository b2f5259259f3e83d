#ifndef CYCLESIM_ENCODING_H
#define CYCLESIM_ENCODING_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclesim {

/// Largest vertex count whose edge register fits in a 64-bit word (11*10/2 = 55 bits).
inline constexpr int kMaxVertices = 11;

/// Number of edges among the first m vertices, m(m-1)/2. Also the position
/// of the last bit of the group for higher vertex m.
constexpr int edges_among(int m) { return m * (m - 1) / 2; }

/// Undirected edge {hi, lo} with 1 <= lo < hi.
struct Edge {
    int hi;
    int lo;
    bool operator==(const Edge &) const = default;
};

/// Bit position (1-based) of edge (i, k), i > k. Positions are grouped by the
/// higher vertex and ordered by the lower one: (2,1),(3,1),(3,2),(4,1),...
/// Throws std::invalid_argument unless 1 <= k < i.
int edge_to_index(int i, int k);

/// Inverse of edge_to_index. Sums 1 + 2 + ... until the running total reaches
/// l; the number of terms plus one is the higher vertex, and l minus the total
/// before the last term is the lower vertex.
Edge index_to_edge(int l);

/// edge_to_index / index_to_edge bounded to a fixed vertex count.
class EdgeIndexer {
   public:
    explicit EdgeIndexer(int n);

    int vertices() const { return n_; }
    int edges() const { return edges_among(n_); }

    int edge_to_index(int i, int k) const;
    Edge index_to_edge(int l) const;

   private:
    int n_;
};

/// Set of edges over n vertices, one bit per edge position.
///
/// Positions are 1-based (position l lives in bit l-1 of the word).
class PathMask {
   public:
    PathMask() = default;
    explicit PathMask(int n, std::uint64_t bits = 0);

    static PathMask from_positions(int n, std::span<const int> positions);
    /// Parses the bit string with position 1 leftmost; whitespace between groups is ignored.
    static PathMask from_binary(int n, std::string_view text);
    /// Parses "<n>:<hex>" as produced by to_hex().
    static PathMask from_hex(std::string_view text);

    int vertices() const { return n_; }
    int width() const { return edges_among(n_); }
    std::uint64_t bits() const { return bits_; }

    bool test(int l) const;
    PathMask with(int l, bool value) const;
    int count() const;
    /// Highest set position, 0 for the empty mask.
    int highest() const;
    std::vector<int> positions() const;

    /// "111000" for the 3-cycle when n = 4.
    std::string to_binary() const;
    /// Binary string split into groups by higher vertex: "1 11 000".
    std::string to_grouped() const;
    /// "<n>:<hex>" where the hex digits spell the binary string, zero padded on the right.
    std::string to_hex() const;

    bool operator==(const PathMask &) const = default;

   private:
    int n_ = 0;
    std::uint64_t bits_ = 0;
};

/// Order of two equal-width bit strings when read with position 1 leftmost.
inline bool bit_string_less(std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    return (b & diff & (~diff + 1)) != 0;
}

/// Lexicographic order of the binary strings.
inline bool operator<(const PathMask &a, const PathMask &b) {
    if (a.vertices() != b.vertices()) {
        return a.vertices() < b.vertices();
    }
    return bit_string_less(a.bits(), b.bits());
}

/// Renders `bits` as '0'/'1' characters, position 1 first.
std::string bits_to_string(std::uint64_t bits, int width);
/// Renders `bits` as groups of 1, 2, ..., up to `width` total characters.
std::string bits_to_grouped(std::uint64_t bits, int width);
std::uint64_t bits_from_string(std::string_view text, int width);

/// Tour (1, v2, ..., vm) whose consecutive and closing pairs are exactly the set
/// edges of `mask`. The neighbor of vertex 1 with the smaller label comes second.
/// Throws NotACycle unless the mask is one Hamiltonian cycle over vertices 1..m.
std::vector<int> decode_cycle(const PathMask &mask, int m);

/// Edge set of a tour that visits each of 1..m once, m = tour.size() >= 3.
PathMask encode_cycle(std::span<const int> tour, int n);
inline PathMask encode_cycle(std::span<const int> tour) { return encode_cycle(tour, static_cast<int>(tour.size())); }

/// True if `mask` is a single Hamiltonian cycle over vertices 1..m.
bool is_cycle(const PathMask &mask, int m);

}  // namespace cyclesim

#endif
