#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ratlink {

struct Point3 {
    long long x = 0, y = 0, z = 0;

    bool operator==(const Point3&) const = default;
    auto operator<=>(const Point3&) const = default;

    long long operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    long long& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

enum class Axis { X = 0, Y = 1, Z = 2 };

// A maximal axis-parallel segment between two lattice points.
struct Stick {
    Point3 a, b;

    Stick() = default;
    Stick(Point3 a_, Point3 b_);

    Axis axis() const;
    long long length() const;

    // Endpoints sorted so equal sticks compare equal regardless of direction.
    Stick normalized() const;

    bool operator==(const Stick&) const = default;
    auto operator<=>(const Stick&) const = default;
};

// Closed loops of axis-parallel sticks, stored as cyclic vertex sequences.
// Each consecutive vertex pair (including last->first) is one maximal stick.
struct LatticeLink {
    std::vector<std::vector<Point3>> loops;

    std::vector<Stick> sticks() const;
};

struct StickCensus {
    long long x = 0, y = 0, z = 0;

    long long total() const { return x + y + z; }
    bool operator==(const StickCensus&) const = default;
};

struct Violation {
    std::string what;
    // Indices identify (loop, segment-within-loop) for each offender when
    // applicable; -1 otherwise.
    int loop_a = -1, seg_a = -1, loop_b = -1, seg_b = -1;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    std::string summary() const;
};

// Intersection of two axis-parallel segments, exact integer logic.  Returns
// nullopt when disjoint; otherwise the intersection is a (possibly degenerate)
// box returned as its two extreme corners.
std::optional<std::pair<Point3, Point3>> stick_intersection(const Stick& s, const Stick& t);

// Checks that every loop is a closed cycle of maximal axis-parallel sticks and
// that any two sticks meet only if consecutive in the same loop, sharing
// exactly their common endpoint.  Failure details go into the report;
// structurally malformed input (repeated consecutive vertices, non
// axis-parallel steps) is reported the same way.
ValidationReport validate_embedding(const LatticeLink& link);

StickCensus stick_census(const LatticeLink& link);

// Merges collinear consecutive segments and removes zero-length steps so every
// listed segment is a maximal stick.  Throws std::invalid_argument when a loop
// degenerates below 4 vertices or a step is not axis-parallel.
LatticeLink canonicalize(const std::vector<std::vector<Point3>>& raw_loops);

}  // namespace ratlink
