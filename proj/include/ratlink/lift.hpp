#pragma once

#include <string>
#include <vector>

#include "ratlink/circuit.hpp"
#include "ratlink/lattice.hpp"

namespace ratlink {

enum class Stage { Baseline, CornerReduced, Final };

std::string to_string(Stage s);

// A lattice embedding of the p/q-link at one stage of the reduction pipeline.
// The planar path2 vertices and the label points are carried along because the
// later stages consume them.
struct LiftedLink {
    Stage stage = Stage::Baseline;
    long long p = 0, q = 0;
    LatticeLink link;

    Pt2 v1, v1p, v2, v2p;
    std::vector<Pt2> path2;
    bool two_component = false;  // path2 joins v2 to v'2 (p even)

    StickCensus census() const { return stick_census(link); }
    int component_count() const { return static_cast<int>(link.loops.size()); }
};

// Stick totals claimed by the reduction pipeline.  The single pair with
// p == 2q (the Hopf link) loses one extra stick at the corner step because the
// detour's middle stick degenerates there; see expected_total.
long long formula_total(Stage stage, long long p, bool two_component);
long long expected_total(Stage stage, long long p, long long q, bool two_component);

// Embeds a regular circuit at z-level 0 and closes each labeled pair with a
// bridge of two z-sticks and one horizontal stick at z-level 1.
LiftedLink lift_baseline(const RegularCircuit& rc);

// Replaces the five-stick path over v1 (both bridge z-sticks, the bridge
// stick itself, and the first two segments of path1) by a detour at z-level 2,
// cutting one stick.
LiftedLink reduce_corner(const LiftedLink& ll);

// Deletes path2 from z-level 0 and rejoins its endpoints at z-level -1 with at
// most two sticks, lengthening the z-sticks at those endpoints.
LiftedLink push_down_p2(const LiftedLink& ll);

struct BuildStages {
    RegularCircuit circuit;
    LiftedLink baseline;
    LiftedLink corner_reduced;
    LiftedLink final_link;
};

BuildStages build_all_stages(long long p, long long q);

// Full pipeline: circuit, lift, corner reduction, push-down.
LiftedLink build_lattice_link(long long p, long long q);

}  // namespace ratlink
