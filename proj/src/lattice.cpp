#include "stagwalk/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stagwalk {

LatticeSpec LatticeSpec::make(int n) {
    if (n <= 1) {
        throw std::invalid_argument("lattice requires n > 1, got n = " +
                                    std::to_string(n));
    }
    LatticeSpec spec;
    spec.n = n;
    spec.side = 2 * n;
    spec.num_vertices = 4 * n * n;
    return spec;
}

int vertex_index(const Vertex& v, const LatticeSpec& lattice) {
    if (v.x < 0 || v.x >= lattice.side || v.y < 0 || v.y >= lattice.side) {
        throw std::out_of_range("vertex (" + std::to_string(v.x) + "," +
                                std::to_string(v.y) + ") outside side-" +
                                std::to_string(lattice.side) + " torus");
    }
    return v.x + lattice.side * v.y;
}

Vertex vertex_at(int index, const LatticeSpec& lattice) {
    if (index < 0 || index >= lattice.num_vertices) {
        throw std::out_of_range("vertex index " + std::to_string(index) +
                                " outside [0, " +
                                std::to_string(lattice.num_vertices) + ")");
    }
    return Vertex{index % lattice.side, index / lattice.side};
}

std::string to_string(TessLabel label) {
    switch (label) {
        case TessLabel::T00: return "00";
        case TessLabel::T01: return "01";
        case TessLabel::T10: return "10";
        case TessLabel::T11: return "11";
    }
    throw std::invalid_argument("bad tessellation label");
}

TessLabel parse_label(const std::string& s) {
    if (s == "00") return TessLabel::T00;
    if (s == "01") return TessLabel::T01;
    if (s == "10") return TessLabel::T10;
    if (s == "11") return TessLabel::T11;
    throw std::invalid_argument("bad tessellation label '" + s +
                                "' (expected 00, 01, 10 or 11)");
}

std::array<TessLabel, 4> parse_ordering(const std::string& s) {
    std::array<TessLabel, 4> out{};
    std::array<bool, 4> seen{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t comma = s.find(',', pos);
        std::string tok = (i < 3) ? s.substr(pos, comma - pos) : s.substr(pos);
        if (i < 3 && comma == std::string::npos) {
            throw std::invalid_argument("ordering '" + s +
                                        "' must list four comma-separated labels");
        }
        out[i] = parse_label(tok);
        if (seen[static_cast<int>(out[i])]) {
            throw std::invalid_argument("ordering '" + s +
                                        "' repeats label " + tok);
        }
        seen[static_cast<int>(out[i])] = true;
        pos = comma + 1;
    }
    return out;
}

std::string ordering_string(const std::array<TessLabel, 4>& ordering) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (i) out += ',';
        out += to_string(ordering[i]);
    }
    return out;
}

namespace {

// Shift pattern for label ab: (dx, dy) = ((-1)^a d_{b0}, (-1)^a d_{b1}).
std::pair<int, int> label_shift(TessLabel label) {
    switch (label) {
        case TessLabel::T00: return {1, 0};
        case TessLabel::T01: return {0, 1};
        case TessLabel::T10: return {-1, 0};
        case TessLabel::T11: return {0, -1};
    }
    throw std::invalid_argument("bad tessellation label");
}

int wrap_coord(int c, int side) { return ((c % side) + side) % side; }

}  // namespace

Tessellation build_tessellation(const LatticeSpec& lattice, TessLabel label) {
    if (lattice.n <= 1) {
        throw std::invalid_argument("build_tessellation requires n > 1");
    }
    auto [dx, dy] = label_shift(label);
    Tessellation tess;
    tess.label = label;
    tess.lattice = lattice;
    tess.polygons.reserve(static_cast<std::size_t>(lattice.num_vertices / 2));
    for (int y = 0; y < lattice.side; ++y) {
        for (int x = 0; x < lattice.side; ++x) {
            if ((x + y) % 2 != 0) continue;
            Vertex anchor{x, y};
            Vertex partner{wrap_coord(x + dx, lattice.side),
                           wrap_coord(y + dy, lattice.side)};
            tess.polygons.push_back(Polygon{anchor, partner});
        }
    }
    return tess;
}

namespace {

Edge make_edge(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

}  // namespace

EdgeCoverReport edge_cover_check(const std::vector<Tessellation>& tessellations,
                                 const LatticeSpec& lattice) {
    std::set<Edge> covered;
    for (const auto& tess : tessellations) {
        if (tess.lattice.n != lattice.n) {
            throw std::invalid_argument("edge_cover_check: tessellation built for n = " +
                                        std::to_string(tess.lattice.n) +
                                        ", lattice has n = " + std::to_string(lattice.n));
        }
        for (const auto& poly : tess.polygons) {
            covered.insert(make_edge(vertex_index(poly.anchor, lattice),
                                     vertex_index(poly.partner, lattice)));
        }
    }
    EdgeCoverReport report;
    for (int y = 0; y < lattice.side; ++y) {
        for (int x = 0; x < lattice.side; ++x) {
            int i = x + lattice.side * y;
            int right = wrap_coord(x + 1, lattice.side) + lattice.side * y;
            int up = x + lattice.side * wrap_coord(y + 1, lattice.side);
            for (Edge e : {make_edge(i, right), make_edge(i, up)}) {
                if (!covered.count(e)) report.uncovered.push_back(e);
            }
        }
    }
    std::sort(report.uncovered.begin(), report.uncovered.end());
    report.uncovered.erase(
        std::unique(report.uncovered.begin(), report.uncovered.end()),
        report.uncovered.end());
    report.covered = report.uncovered.empty();
    return report;
}

}  // namespace stagwalk
