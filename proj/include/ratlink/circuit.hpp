#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ratlink {

struct Pt2 {
    long long x = 0, y = 0;

    bool operator==(const Pt2&) const = default;
    auto operator<=>(const Pt2&) const = default;
};

// Provenance of a segment through the construction pipeline; used for
// diagnostics and SVG layering only.
enum class SegTag { Central, Moved, Rerouted, Extended };

struct Seg2 {
    Pt2 a, b;
    SegTag tag = SegTag::Central;

    Seg2() = default;
    Seg2(Pt2 a_, Pt2 b_, SegTag tag_ = SegTag::Central);

    bool vertical() const { return a.x == b.x; }
    bool horizontal() const { return a.y == b.y; }
    long long xmin() const { return a.x < b.x ? a.x : b.x; }
    long long xmax() const { return a.x < b.x ? b.x : a.x; }
    long long ymin() const { return a.y < b.y ? a.y : b.y; }
    long long ymax() const { return a.y < b.y ? b.y : a.y; }
};

// Simple chain of lattice points; consecutive points differ in one coordinate.
struct Arc2D {
    std::vector<Pt2> pts;
};

// n disjoint planar arcs whose 2n endpoints carry labels (v_i, v'_i).
struct NCircuit {
    std::vector<Arc2D> arcs;
    std::vector<std::pair<Pt2, Pt2>> labels;  // labels[i] = (v_{i+1}, v'_{i+1})
};

struct RegularityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// An NCircuit certified regular, with the two paths of the n=2 construction
// identified: path1 starts at v1, path2 at v2.
struct RegularCircuit {
    NCircuit circuit;
    long long p = 0, q = 0;
    Arc2D path1, path2;
    bool path2_joins_v2_to_v2p = false;  // otherwise path2 runs v2 -> v'1

    Pt2 v1() const { return circuit.labels[0].first; }
    Pt2 v1p() const { return circuit.labels[0].second; }
    Pt2 v2() const { return circuit.labels[1].first; }
    Pt2 v2p() const { return circuit.labels[1].second; }
};

// Working state of the planar rewrite pipeline.
struct Sketch {
    long long p = 0, q = 0;
    std::vector<Seg2> segs;
};

// Axis-parallel diagram of the p/q pillowcase tangle inside the diamond with
// corners (0,0), (q,-q), (p+q,p-q), (p,p): the two billiard arcs of slope
// +-p/q in the unit square, pushed through the integer transform
// (x,y) -> (px-qy, px+qy).  The closing arcs along the top and bottom of the
// square are not part of the result.
std::vector<Arc2D> central_segments(long long p, long long q);

Sketch make_sketch(long long p, long long q, const std::vector<Arc2D>& arcs);

// For i = 1..q, slides the horizontal at height p-i up to p+i and the one at
// height -q+i down to -q-i, reconnecting the adjacent verticals.
Sketch move_horizontals(Sketch sk);

// For i = 1..p-q-1, replaces the remaining full-width horizontal at height
// p-q-i by the three-corner detour through (p-q-i, p+q+i), (p+q+i, p+q+i) and
// (p+q+i, p-q-i).  No-op when p-q = 1.
Sketch reroute_long_horizontals(Sketch sk);

// Extends the boundary verticals to (0,p)..(0,-2q) and (p+q,-q)..(p+q,p+q);
// any horizontal crossed by an extension is dropped downward by the least
// offset that clears every intersection, dragging its attached verticals.
Sketch extend_boundary(Sketch sk);

// Traces the final segment soup into the two labeled paths, merges collinear
// runs, checks the segment census and disjointness, and certifies regularity.
RegularCircuit assemble_circuit(const Sketch& sk);

// Conditions for a regular circuit: each labeled pair is axis-aligned, and
// distinct pairs have disjoint coordinate intervals in x or in y.
RegularityReport check_regular(const NCircuit& c);

// Convenience: full planar pipeline.
RegularCircuit build_circuit(long long p, long long q);

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ratlink
