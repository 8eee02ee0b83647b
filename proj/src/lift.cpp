#include "ratlink/lift.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ratlink/tangle.hpp"

namespace ratlink {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConstructionError(msg);
}

std::string pt_str(const Point3& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) +
           ")";
}

struct Soup {
    std::vector<Stick> sticks;

    void add(Point3 a, Point3 b) { sticks.push_back(Stick(a, b).normalized()); }

    void remove(Point3 a, Point3 b) {
        Stick want = Stick(a, b).normalized();
        auto it = std::find(sticks.begin(), sticks.end(), want);
        require(it != sticks.end(),
                "expected stick " + pt_str(a) + "-" + pt_str(b) + " is absent");
        sticks.erase(it);
    }

    // The unique z-stick rising from z=0 in the given column; index returned.
    int z_stick_at(long long x, long long y) const {
        int found = -1;
        for (std::size_t i = 0; i < sticks.size(); ++i) {
            const Stick& s = sticks[i];
            if (s.axis() != Axis::Z || s.a.x != x || s.a.y != y) continue;
            require(found < 0, "multiple z-sticks in column (" + std::to_string(x) + "," +
                                   std::to_string(y) + ")");
            found = static_cast<int>(i);
        }
        require(found >= 0, "no z-stick in column (" + std::to_string(x) + "," +
                                std::to_string(y) + ")");
        return found;
    }
};

LatticeLink trace_loops(const Soup& soup) {
    std::map<Point3, std::vector<int>> at;
    for (std::size_t i = 0; i < soup.sticks.size(); ++i) {
        at[soup.sticks[i].a].push_back(static_cast<int>(i));
        at[soup.sticks[i].b].push_back(static_cast<int>(i));
    }
    for (const auto& [pt, ids] : at)
        require(ids.size() == 2, "stick endpoint " + pt_str(pt) + " has degree " +
                                     std::to_string(ids.size()) + ", expected 2");

    std::vector<bool> used(soup.sticks.size(), false);
    std::vector<std::vector<Point3>> loops;
    for (std::size_t start = 0; start < soup.sticks.size(); ++start) {
        if (used[start]) continue;
        std::vector<Point3> loop;
        int cur = static_cast<int>(start);
        Point3 pt = soup.sticks[start].a;
        do {
            used[cur] = true;
            loop.push_back(pt);
            pt = (soup.sticks[cur].a == pt) ? soup.sticks[cur].b : soup.sticks[cur].a;
            const auto& ids = at.at(pt);
            cur = (ids[0] == cur) ? ids[1] : ids[0];
        } while (!used[cur]);
        require(pt == soup.sticks[start].a, "loop tracing did not close");
        loops.push_back(std::move(loop));
    }

    LatticeLink link = canonicalize(loops);
    // The pipeline only ever emits maximal sticks; a merge here means two
    // collinear sticks were stitched, i.e. a construction bug.
    require(stick_census(link).total() == static_cast<long long>(soup.sticks.size()),
            "traced loops merged collinear sticks");
    return link;
}

void check_stage(const LiftedLink& ll) {
    StickCensus c = ll.census();
    long long want = expected_total(ll.stage, ll.p, ll.q, ll.two_component);
    require(c.total() == want, "stage " + to_string(ll.stage) + " for " +
                                   std::to_string(ll.p) + "/" + std::to_string(ll.q) +
                                   ": total " + std::to_string(c.total()) + ", expected " +
                                   std::to_string(want));
    require(c.z == 4, "stage " + to_string(ll.stage) + ": z-stick count " +
                          std::to_string(c.z) + ", expected 4");
    ValidationReport rep = validate_embedding(ll.link);
    require(rep.ok,
            "stage " + to_string(ll.stage) + " embedding invalid: " + rep.summary());
}

}  // namespace

std::string to_string(Stage s) {
    switch (s) {
        case Stage::Baseline: return "baseline";
        case Stage::CornerReduced: return "corner";
        case Stage::Final: return "final";
    }
    return "?";
}

long long formula_total(Stage stage, long long p, bool two_component) {
    switch (stage) {
        case Stage::Baseline: return 4 * p + 4;
        case Stage::CornerReduced: return 4 * p + 3;
        case Stage::Final: return two_component ? 2 * p + 5 : 2 * p + 6;
    }
    return -1;
}

long long expected_total(Stage stage, long long p, long long q, bool two_component) {
    long long degenerate = (stage != Stage::Baseline && p == 2 * q) ? 1 : 0;
    return formula_total(stage, p, two_component) - degenerate;
}

LiftedLink lift_baseline(const RegularCircuit& rc) {
    const long long p = rc.p, q = rc.q;
    require(rc.v1().y == rc.v1p().y && rc.v2().y == rc.v2p().y,
            "labeled pairs must each share a y-coordinate");

    Soup soup;
    auto add_path = [&](const Arc2D& arc) {
        for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i)
            soup.add(Point3{arc.pts[i].x, arc.pts[i].y, 0},
                     Point3{arc.pts[i + 1].x, arc.pts[i + 1].y, 0});
    };
    add_path(rc.path1);
    add_path(rc.path2);
    auto add_bridge = [&](Pt2 u, Pt2 v) {
        soup.add(Point3{u.x, u.y, 0}, Point3{u.x, u.y, 1});
        soup.add(Point3{u.x, u.y, 1}, Point3{v.x, v.y, 1});
        soup.add(Point3{v.x, v.y, 1}, Point3{v.x, v.y, 0});
    };
    add_bridge(rc.v1(), rc.v1p());
    add_bridge(rc.v2(), rc.v2p());

    LiftedLink ll;
    ll.stage = Stage::Baseline;
    ll.p = p;
    ll.q = q;
    ll.v1 = rc.v1();
    ll.v1p = rc.v1p();
    ll.v2 = rc.v2();
    ll.v2p = rc.v2p();
    ll.path2 = rc.path2.pts;
    ll.two_component = rc.path2_joins_v2_to_v2p;
    ll.link = trace_loops(soup);
    check_stage(ll);
    return ll;
}

LiftedLink reduce_corner(const LiftedLink& ll) {
    require(ll.stage == Stage::Baseline, "reduce_corner expects a baseline link");
    const long long p = ll.p, q = ll.q;

    Soup soup;
    soup.sticks = ll.link.sticks();
    for (Stick& s : soup.sticks) s = s.normalized();

    // The five-stick path over v1: up from v'1, across the bridge, down to v1,
    // along path1's boundary vertical, then its lowest horizontal.
    soup.remove({p, p, 0}, {p, p, 1});
    soup.remove({p, p, 1}, {0, p, 1});
    soup.remove({0, p, 1}, {0, p, 0});
    soup.remove({0, p, 0}, {0, -2 * q, 0});
    soup.remove({0, -2 * q, 0}, {2 * q, -2 * q, 0});

    soup.add({p, p, 0}, {p, p, 2});
    soup.add({p, p, 2}, {p, -2 * q, 2});
    if (p != 2 * q) soup.add({p, -2 * q, 2}, {2 * q, -2 * q, 2});
    soup.add({2 * q, -2 * q, 2}, {2 * q, -2 * q, 0});

    LiftedLink out = ll;
    out.stage = Stage::CornerReduced;
    out.link = trace_loops(soup);
    check_stage(out);
    return out;
}

LiftedLink push_down_p2(const LiftedLink& ll) {
    require(ll.stage == Stage::CornerReduced, "push_down_p2 expects a corner-reduced link");

    Soup soup;
    soup.sticks = ll.link.sticks();
    for (Stick& s : soup.sticks) s = s.normalized();

    for (std::size_t i = 0; i + 1 < ll.path2.size(); ++i)
        soup.remove({ll.path2[i].x, ll.path2[i].y, 0},
                    {ll.path2[i + 1].x, ll.path2[i + 1].y, 0});

    require(ll.path2.size() >= 2, "push_down_p2: path2 is degenerate");
    Pt2 start = ll.path2.front();
    Pt2 end = ll.path2.back();
    for (Pt2 e : {start, end}) {
        int zi = soup.z_stick_at(e.x, e.y);
        Stick s = soup.sticks[zi];
        require(std::min(s.a.z, s.b.z) == 0, "z-stick at a path2 endpoint does not reach z=0");
        long long top = std::max(s.a.z, s.b.z);
        soup.sticks[zi] = Stick(Point3{e.x, e.y, -1}, Point3{e.x, e.y, top});
    }

    auto attempt = [&](const std::vector<Point3>& join) -> std::optional<LiftedLink> {
        Soup trial = soup;
        for (std::size_t i = 0; i + 1 < join.size(); ++i) trial.add(join[i], join[i + 1]);
        LiftedLink out = ll;
        out.stage = Stage::Final;
        try {
            out.link = trace_loops(trial);
            check_stage(out);
        } catch (const ConstructionError&) {
            return std::nullopt;
        }
        return out;
    };

    std::vector<std::vector<Point3>> candidates;
    if (start.y == end.y || start.x == end.x) {
        // Both endpoints on one line (the 2-component case): a single stick.
        candidates.push_back({{start.x, start.y, -1}, {end.x, end.y, -1}});
    } else {
        // L-shaped join; prefer the corner below the y = -q side.
        Pt2 low = (start.y < end.y) ? start : end;
        Pt2 high = (start.y < end.y) ? end : start;
        candidates.push_back(
            {{low.x, low.y, -1}, {high.x, low.y, -1}, {high.x, high.y, -1}});
        candidates.push_back(
            {{low.x, low.y, -1}, {low.x, high.y, -1}, {high.x, high.y, -1}});
    }
    for (const auto& join : candidates)
        if (auto out = attempt(join)) return *out;
    throw ConstructionError("push_down_p2: no valid join at z=-1 for " + std::to_string(ll.p) +
                            "/" + std::to_string(ll.q));
}

BuildStages build_all_stages(long long p, long long q) {
    if (p < 2) throw std::domain_error("build_lattice_link: requires p >= 2");
    if (q < 1 || p <= q) throw std::domain_error("build_lattice_link: requires p > q >= 1");
    if (gcd_ll(p, q) != 1)
        throw std::domain_error("build_lattice_link: p and q must be coprime");

    BuildStages out;
    out.circuit = build_circuit(p, q);
    out.baseline = lift_baseline(out.circuit);
    out.corner_reduced = reduce_corner(out.baseline);
    out.final_link = push_down_p2(out.corner_reduced);

    // Component parity: path2 joins its own labels exactly when p is even.
    require(out.final_link.two_component == (p % 2 == 0),
            "component parity rule violated for " + std::to_string(p) + "/" +
                std::to_string(q));
    require(out.final_link.component_count() == (p % 2 == 0 ? 2 : 1),
            "traced component count disagrees with parity");
    return out;
}

LiftedLink build_lattice_link(long long p, long long q) {
    return build_all_stages(p, q).final_link;
}

}  // namespace ratlink
