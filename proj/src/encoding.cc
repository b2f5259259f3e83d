#include "cyclesim/encoding.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cyclesim/errors.h"

namespace cyclesim {

int edge_to_index(int i, int k) {
    if (k < 1 || k >= i) {
        throw std::invalid_argument("edge (" + std::to_string(i) + "," + std::to_string(k) +
                                    ") must satisfy 1 <= k < i");
    }
    return edges_among(i - 1) + k;
}

Edge index_to_edge(int l) {
    if (l < 1) {
        throw std::invalid_argument("edge position must be >= 1, got " + std::to_string(l));
    }
    int terms = 0;
    int sum = 0;
    while (sum < l) {
        ++terms;
        sum += terms;
    }
    return {terms + 1, l - (sum - terms)};
}

EdgeIndexer::EdgeIndexer(int n) : n_(n) {
    if (n < 3) {
        throw std::invalid_argument("vertex count must be >= 3, got " + std::to_string(n));
    }
}

int EdgeIndexer::edge_to_index(int i, int k) const {
    if (i > n_) {
        throw std::invalid_argument("vertex " + std::to_string(i) + " exceeds n=" + std::to_string(n_));
    }
    return cyclesim::edge_to_index(i, k);
}

Edge EdgeIndexer::index_to_edge(int l) const {
    if (l < 1 || l > edges()) {
        throw std::invalid_argument("edge position " + std::to_string(l) + " outside 1.." + std::to_string(edges()));
    }
    return cyclesim::index_to_edge(l);
}

std::string bits_to_string(std::uint64_t bits, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int l = 0; l < width; ++l) {
        if ((bits >> l) & 1) {
            out[static_cast<std::size_t>(l)] = '1';
        }
    }
    return out;
}

std::string bits_to_grouped(std::uint64_t bits, int width) {
    std::string out;
    int pos = 0;
    for (int group = 1; pos < width; ++group) {
        if (!out.empty()) {
            out += ' ';
        }
        for (int j = 0; j < group && pos < width; ++j, ++pos) {
            out += ((bits >> pos) & 1) ? '1' : '0';
        }
    }
    return out;
}

std::uint64_t bits_from_string(std::string_view text, int width) {
    std::uint64_t bits = 0;
    int pos = 0;
    for (char ch : text) {
        if (ch == ' ') {
            continue;
        }
        if (ch != '0' && ch != '1') {
            throw ValidationError("bit string contains '" + std::string(1, ch) + "'");
        }
        if (pos >= width) {
            throw ValidationError("bit string longer than register width " + std::to_string(width));
        }
        if (ch == '1') {
            bits |= std::uint64_t{1} << pos;
        }
        ++pos;
    }
    if (pos != width) {
        throw ValidationError("bit string has " + std::to_string(pos) + " bits, expected " + std::to_string(width));
    }
    return bits;
}

PathMask::PathMask(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n < 3 || n > kMaxVertices) {
        throw CapacityExceeded("path register supports 3.." + std::to_string(kMaxVertices) + " vertices, got " +
                               std::to_string(n));
    }
    if (width() < 64 && (bits >> width()) != 0) {
        throw WidthMismatch("path bits beyond position " + std::to_string(width()));
    }
}

PathMask PathMask::from_positions(int n, std::span<const int> positions) {
    PathMask mask(n);
    for (int l : positions) {
        mask = mask.with(l, true);
    }
    return mask;
}

PathMask PathMask::from_binary(int n, std::string_view text) {
    PathMask probe(n);
    return PathMask(n, bits_from_string(text, probe.width()));
}

PathMask PathMask::from_hex(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError("hex path mask must look like '<n>:<hex>'");
    }
    int n = 0;
    try {
        n = std::stoi(std::string(text.substr(0, colon)));
    } catch (const std::exception &) {
        throw ValidationError("hex path mask has malformed vertex count");
    }
    PathMask probe(n);
    std::string_view digits = text.substr(colon + 1);
    if (static_cast<int>(digits.size()) != (probe.width() + 3) / 4) {
        throw ValidationError("hex path mask has wrong digit count for n=" + std::to_string(n));
    }
    std::string binary;
    for (char ch : digits) {
        int v;
        if (ch >= '0' && ch <= '9') {
            v = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            v = ch - 'a' + 10;
        } else if (ch >= 'A' && ch <= 'F') {
            v = ch - 'A' + 10;
        } else {
            throw ValidationError("hex path mask contains '" + std::string(1, ch) + "'");
        }
        for (int b = 3; b >= 0; --b) {
            binary += ((v >> b) & 1) ? '1' : '0';
        }
    }
    if (binary.find('1', static_cast<std::size_t>(probe.width())) != std::string::npos) {
        throw ValidationError("hex path mask has bits set in the padding");
    }
    binary.resize(static_cast<std::size_t>(probe.width()));
    return from_binary(n, binary);
}

bool PathMask::test(int l) const {
    if (l < 1 || l > width()) {
        throw std::out_of_range("edge position " + std::to_string(l) + " outside 1.." + std::to_string(width()));
    }
    return (bits_ >> (l - 1)) & 1;
}

PathMask PathMask::with(int l, bool value) const {
    test(l);
    std::uint64_t bit = std::uint64_t{1} << (l - 1);
    return PathMask(n_, value ? (bits_ | bit) : (bits_ & ~bit));
}

int PathMask::count() const { return std::popcount(bits_); }

int PathMask::highest() const { return 64 - std::countl_zero(bits_); }

std::vector<int> PathMask::positions() const {
    std::vector<int> out;
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
        out.push_back(std::countr_zero(rest) + 1);
    }
    return out;
}

std::string PathMask::to_binary() const { return bits_to_string(bits_, width()); }

std::string PathMask::to_grouped() const { return bits_to_grouped(bits_, width()); }

std::string PathMask::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string binary = to_binary();
    binary.resize((binary.size() + 3) / 4 * 4, '0');
    std::string out = std::to_string(n_) + ":";
    for (std::size_t i = 0; i < binary.size(); i += 4) {
        int v = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            v = v * 2 + (binary[i + j] - '0');
        }
        out += kDigits[v];
    }
    return out;
}

namespace {

// Walks the edge set starting at vertex 1; returns an empty tour if the set is
// not one cycle through every vertex 1..m.
std::vector<int> walk_cycle(const PathMask &mask, int m, std::string *why) {
    auto fail = [&](std::string reason) {
        if (why != nullptr) {
            *why = std::move(reason);
        }
        return std::vector<int>{};
    };
    if (m < 3) {
        return fail("cycle needs at least 3 vertices");
    }
    if (m > mask.vertices()) {
        return fail("level " + std::to_string(m) + " exceeds register of " + std::to_string(mask.vertices()) +
                    " vertices");
    }
    if (mask.count() != m) {
        return fail("expected " + std::to_string(m) + " edges, found " + std::to_string(mask.count()));
    }
    if (mask.highest() > edges_among(m)) {
        return fail("edge at position " + std::to_string(mask.highest()) + " touches a vertex above " +
                    std::to_string(m));
    }
    std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(m + 1));
    for (int l : mask.positions()) {
        Edge e = index_to_edge(l);
        adjacent[static_cast<std::size_t>(e.hi)].push_back(e.lo);
        adjacent[static_cast<std::size_t>(e.lo)].push_back(e.hi);
    }
    for (int v = 1; v <= m; ++v) {
        if (adjacent[static_cast<std::size_t>(v)].size() != 2) {
            return fail("vertex " + std::to_string(v) + " has degree " +
                        std::to_string(adjacent[static_cast<std::size_t>(v)].size()));
        }
    }
    std::vector<int> tour{1};
    int prev = 1;
    int cur = std::min(adjacent[1][0], adjacent[1][1]);
    while (cur != 1) {
        tour.push_back(cur);
        const auto &nb = adjacent[static_cast<std::size_t>(cur)];
        int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(tour.size()) != m) {
        return fail("edge set splits into disjoint cycles");
    }
    return tour;
}

}  // namespace

std::vector<int> decode_cycle(const PathMask &mask, int m) {
    std::string why;
    std::vector<int> tour = walk_cycle(mask, m, &why);
    if (tour.empty()) {
        throw NotACycle("mask " + mask.to_grouped() + " is not a Hamiltonian cycle on " + std::to_string(m) +
                        " vertices: " + why);
    }
    return tour;
}

bool is_cycle(const PathMask &mask, int m) { return !walk_cycle(mask, m, nullptr).empty(); }

PathMask encode_cycle(std::span<const int> tour, int n) {
    const int m = static_cast<int>(tour.size());
    if (m < 3) {
        throw std::invalid_argument("tour needs at least 3 vertices");
    }
    if (m > n) {
        throw std::invalid_argument("tour of " + std::to_string(m) + " vertices does not fit n=" + std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(m + 1), false);
    for (int v : tour) {
        if (v < 1 || v > m) {
            throw std::invalid_argument("tour vertex " + std::to_string(v) + " outside 1.." + std::to_string(m));
        }
        if (seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("tour repeats vertex " + std::to_string(v));
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    PathMask mask(n);
    for (int j = 0; j < m; ++j) {
        int a = tour[static_cast<std::size_t>(j)];
        int b = tour[static_cast<std::size_t>((j + 1) % m)];
        mask = mask.with(edge_to_index(std::max(a, b), std::min(a, b)), true);
    }
    return mask;
}

}  // namespace cyclesim
