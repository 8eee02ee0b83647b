#include "ratlink/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratlink {

namespace {

int diff_coords(const Point3& a, const Point3& b) {
    return (a.x != b.x) + (a.y != b.y) + (a.z != b.z);
}

bool collinear_through(const Point3& a, const Point3& b, const Point3& c) {
    // a->b and b->c are axis-parallel; collinear iff they move along the same
    // axis (direction reversal would mean b is not a vertex of a simple loop,
    // caught later by the overlap check).
    for (int i = 0; i < 3; ++i)
        if (a[i] != b[i] && b[i] != c[i]) return true;
    return false;
}

}  // namespace

Stick::Stick(Point3 a_, Point3 b_) : a(a_), b(b_) {
    if (diff_coords(a, b) != 1)
        throw std::invalid_argument("Stick: endpoints must differ in exactly one coordinate");
}

Axis Stick::axis() const {
    if (a.x != b.x) return Axis::X;
    if (a.y != b.y) return Axis::Y;
    return Axis::Z;
}

long long Stick::length() const {
    long long d = 0;
    for (int i = 0; i < 3; ++i) d += std::abs(a[i] - b[i]);
    return d;
}

Stick Stick::normalized() const {
    Stick s = *this;
    if (s.b < s.a) std::swap(s.a, s.b);
    return s;
}

std::vector<Stick> LatticeLink::sticks() const {
    std::vector<Stick> out;
    for (const auto& loop : loops)
        for (std::size_t i = 0; i < loop.size(); ++i)
            out.emplace_back(loop[i], loop[(i + 1) % loop.size()]);
    return out;
}

std::string ValidationReport::summary() const {
    if (ok) return "valid";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto& v : violations) os << "\n  " << v.what;
    return os.str();
}

std::optional<std::pair<Point3, Point3>> stick_intersection(const Stick& s, const Stick& t) {
    Point3 lo, hi;
    for (int i = 0; i < 3; ++i) {
        long long slo = std::min(s.a[i], s.b[i]), shi = std::max(s.a[i], s.b[i]);
        long long tlo = std::min(t.a[i], t.b[i]), thi = std::max(t.a[i], t.b[i]);
        long long l = std::max(slo, tlo), h = std::min(shi, thi);
        if (l > h) return std::nullopt;
        lo[i] = l;
        hi[i] = h;
    }
    return std::make_pair(lo, hi);
}

ValidationReport validate_embedding(const LatticeLink& link) {
    ValidationReport report;
    auto fail = [&](Violation v) {
        report.ok = false;
        report.violations.push_back(std::move(v));
    };

    // Structural pass per loop.
    for (std::size_t li = 0; li < link.loops.size(); ++li) {
        const auto& loop = link.loops[li];
        if (loop.size() < 4) {
            fail({"loop " + std::to_string(li) + " has fewer than 4 vertices",
                  static_cast<int>(li), -1, -1, -1});
            continue;
        }
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Point3& a = loop[i];
            const Point3& b = loop[(i + 1) % loop.size()];
            const Point3& c = loop[(i + 2) % loop.size()];
            if (diff_coords(a, b) != 1) {
                fail({"loop " + std::to_string(li) + " segment " + std::to_string(i) +
                          " is not a unit-axis step family (repeated vertex or diagonal)",
                      static_cast<int>(li), static_cast<int>(i), -1, -1});
                return report;  // geometry below assumes axis-parallel segments
            }
            if (collinear_through(a, b, c))
                fail({"loop " + std::to_string(li) + " segments " + std::to_string(i) + "," +
                          std::to_string((i + 1) % loop.size()) +
                          " are collinear (stick not maximal)",
                      static_cast<int>(li), static_cast<int>(i), static_cast<int>(li),
                      static_cast<int>((i + 1) % loop.size())});
        }
    }
    if (!report.ok) return report;

    // Pairwise stick intersections.
    struct Ref {
        int loop, seg;
        Stick stick;
    };
    std::vector<Ref> all;
    for (std::size_t li = 0; li < link.loops.size(); ++li) {
        const auto& loop = link.loops[li];
        for (std::size_t i = 0; i < loop.size(); ++i)
            all.push_back({static_cast<int>(li), static_cast<int>(i),
                           Stick(loop[i], loop[(i + 1) % loop.size()])});
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Ref& r = all[i];
            const Ref& s = all[j];
            auto box = stick_intersection(r.stick, s.stick);
            if (!box) continue;
            bool consecutive = false;
            Point3 shared;
            if (r.loop == s.loop) {
                int n = static_cast<int>(link.loops[r.loop].size());
                if ((r.seg + 1) % n == s.seg) {
                    consecutive = true;
                    shared = link.loops[r.loop][s.seg];
                } else if ((s.seg + 1) % n == r.seg) {
                    consecutive = true;
                    shared = link.loops[r.loop][r.seg];
                }
            }
            if (consecutive && box->first == box->second && box->first == shared) continue;
            std::ostringstream os;
            os << "sticks (" << r.loop << "," << r.seg << ") and (" << s.loop << "," << s.seg
               << ") intersect at [" << box->first.x << "," << box->first.y << ","
               << box->first.z << "]";
            if (box->first != box->second)
                os << "..[" << box->second.x << "," << box->second.y << "," << box->second.z
                   << "]";
            fail({os.str(), r.loop, r.seg, s.loop, s.seg});
        }
    }
    return report;
}

StickCensus stick_census(const LatticeLink& link) {
    StickCensus c;
    for (const Stick& s : link.sticks()) {
        switch (s.axis()) {
            case Axis::X: ++c.x; break;
            case Axis::Y: ++c.y; break;
            case Axis::Z: ++c.z; break;
        }
    }
    return c;
}

LatticeLink canonicalize(const std::vector<std::vector<Point3>>& raw_loops) {
    LatticeLink out;
    for (const auto& raw : raw_loops) {
        std::vector<Point3> pts;
        for (const Point3& p : raw)
            if (pts.empty() || pts.back() != p) pts.push_back(p);
        if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
        if (pts.size() < 3) throw std::invalid_argument("canonicalize: degenerate loop");
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (diff_coords(pts[i], pts[(i + 1) % pts.size()]) != 1)
                throw std::invalid_argument("canonicalize: step is not axis-parallel");
        // Merge collinear runs, including across the seam.  A direction
        // reversal is self-overlap, not a mergeable vertex.
        std::vector<Point3> merged;
        std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point3& prev = pts[(i + n - 1) % n];
            const Point3& cur = pts[i];
            const Point3& next = pts[(i + 1) % n];
            if (!collinear_through(prev, cur, next)) {
                merged.push_back(cur);
                continue;
            }
            for (int k = 0; k < 3; ++k) {
                long long d1 = cur[k] - prev[k], d2 = next[k] - cur[k];
                if (d1 != 0 && d2 != 0 && ((d1 > 0) != (d2 > 0)))
                    throw std::invalid_argument("canonicalize: backtracking step in loop");
            }
        }
        if (merged.size() < 4)
            throw std::invalid_argument("canonicalize: loop degenerates below 4 vertices");
        out.loops.push_back(std::move(merged));
    }
    return out;
}

}  // namespace ratlink
