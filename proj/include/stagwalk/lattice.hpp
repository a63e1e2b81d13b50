#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stagwalk {

// Torus of side 2n with N = 4n^2 vertices. n = 1 is rejected: with side 2 the
// +-1 shifts would pair a vertex with itself.
struct LatticeSpec {
    int n = 0;
    int side = 0;
    int num_vertices = 0;

    static LatticeSpec make(int n);  // throws std::invalid_argument if n <= 1
};

struct Vertex {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.x == b.x && a.y == b.y;
    }
};

inline bool even_parity(const Vertex& v) { return (v.x + v.y) % 2 == 0; }

// index = x + 2n*y (x fastest). Throws std::out_of_range for coordinates
// outside [0, 2n).
int vertex_index(const Vertex& v, const LatticeSpec& lattice);
Vertex vertex_at(int index, const LatticeSpec& lattice);

enum class TessLabel : int { T00 = 0, T01 = 1, T10 = 2, T11 = 3 };

constexpr std::array<TessLabel, 4> kDefaultOrdering = {
    TessLabel::T00, TessLabel::T01, TessLabel::T10, TessLabel::T11};

std::string to_string(TessLabel label);
// Accepts "00", "01", "10", "11"; throws std::invalid_argument otherwise.
TessLabel parse_label(const std::string& s);
// Comma-separated list of four labels forming a permutation, e.g. "00,01,10,11".
std::array<TessLabel, 4> parse_ordering(const std::string& s);
std::string ordering_string(const std::array<TessLabel, 4>& ordering);

// Polygon = one pair {anchor, partner}; anchor has even parity, partner odd.
struct Polygon {
    Vertex anchor;
    Vertex partner;
};

struct Tessellation {
    TessLabel label;
    LatticeSpec lattice;
    std::vector<Polygon> polygons;  // N/2 entries, anchors in index order
};

// Polygons {(x,y), (x + (-1)^a d_{b0}, y + (-1)^a d_{b1})} over even-parity
// anchors, coordinates mod 2n, for label ab.
Tessellation build_tessellation(const LatticeSpec& lattice, TessLabel label);

// Undirected edge keyed by its endpoint indices, smaller first.
using Edge = std::pair<int, int>;

struct EdgeCoverReport {
    bool covered = false;
    std::vector<Edge> uncovered;  // torus edges missed by the tessellation set
};

EdgeCoverReport edge_cover_check(const std::vector<Tessellation>& tessellations,
                                 const LatticeSpec& lattice);

}  // namespace stagwalk
