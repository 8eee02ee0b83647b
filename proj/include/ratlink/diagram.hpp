#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratlink/lattice.hpp"
#include "ratlink/laurent.hpp"
#include "ratlink/tangle.hpp"

namespace ratlink {

// Combinatorial planar link diagram.  Each crossing lists the four incident
// arc ids in counterclockwise rotation order; slots 0 and 2 carry the
// over-strand.  Arc ids run 0..n_arcs-1 and each id appears exactly twice
// across all slots.  Components without crossings are counted separately.
struct Diagram {
    std::vector<std::array<int, 4>> crossings;
    int n_arcs = 0;
    int free_loops = 0;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
};

struct NonRegularProjection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProjectOptions {
    Axis axis = Axis::Z;
    // When the straight projection is not regular, repeatedly displace an
    // offending stick by a verified unit isotopy and retry.  The perturbed
    // copy exists only for invariant computation.
    bool auto_perturb = true;
    // Selects a different (equally valid) perturbation search order.
    int variant = 0;
    int max_perturbations = 256;
    bool trace_perturbations = false;
};

struct ProjectionResult {
    Diagram diagram;
    int perturbations = 0;
    // The (possibly perturbed) copy that was actually projected.
    LatticeLink projected;
};

// Projects the link along the chosen axis; the stick with the larger dropped
// coordinate passes over.  Throws NonRegularProjection when the projection is
// irregular and auto_perturb is off (or the perturbation budget runs out).
ProjectionResult project(const LatticeLink& link, const ProjectOptions& opts = {});

enum class BracketEngine { Naive, Memoized };

struct BracketOptions {
    BracketEngine engine = BracketEngine::Memoized;
    // The naive engine enumerates 2^c states; refuse beyond this many
    // crossings.  The memoized engine gets a generous structural limit.
    int max_naive_crossings = 24;
    int max_memo_crossings = 64;
};

// Kauffman bracket with loop value -A^2 - A^-2; an empty diagram of k loops
// yields (-A^2-A^-2)^(k-1).
LaurentPoly kauffman_bracket(const Diagram& d, const BracketOptions& opts = {});

// (-A^3)^(-writhe) * bracket, exact in A.  Component orientations follow the
// diagram's strand traversal; for multi-component diagrams the value is
// canonicalized over relative orientation classes (smallest polynomial wins)
// so that any two diagrams of the same unoriented link compare equal.
LaurentPoly normalized_jones(const Diagram& d, const BracketOptions& opts = {});

// Number of closed strands.
int component_count(const Diagram& d);

// |det| of a reduced Goeritz matrix from a checkerboard coloring of the
// diagram's faces.  Requires a connected diagram with no crossingless
// components (except the plain unknot).
long long determinant(const Diagram& d);

// Standard 4-plat diagram of the rational link for a Conway word: a1
// crossings added at the side, a2 at the bottom, alternating, then the top
// endpoints joined together and likewise the bottom ones.
Diagram reference_diagram(const ConwayWord& word);

// Mirror image: every crossing's over-strand becomes the under-strand.
Diagram mirror(const Diagram& d);

// Textual planar-diagram code: one crossing per line, the four arc ids in
// rotation order, then the arc entering the over-strand slot.
std::string pd_dump(const Diagram& d);

// Structural sanity: every arc id used exactly twice, slots consistent.
void check_diagram(const Diagram& d);

}  // namespace ratlink
