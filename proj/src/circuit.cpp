#include "ratlink/circuit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ratlink/tangle.hpp"

namespace ratlink {

namespace {

std::string pt_str(Pt2 p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConstructionError(msg);
}

// Triangle-wave fold of v into [0, m] with period 2m.
long long fold(long long v, long long m) {
    long long r = v % (2 * m);
    if (r < 0) r += 2 * m;
    return r <= m ? r : 2 * m - r;
}

// One billiard arc of slope +-p/q in the unit square, traced corner to
// corner.  Coordinates are kept as integer numerators (xn/p, -yn/q); wall
// events happen at times that are multiples of p or q, and the linear map
// (x,y) -> (px-qy, px+qy) sends a numerator pair to (xn+yn, xn-yn).
Arc2D trace_billiard_arc(long long p, long long q, long long cx, long long cy) {
    std::vector<long long> times;
    times.push_back(0);
    for (long long t = p; t < p * q; t += p) times.push_back(t);
    for (long long t = q; t < p * q; t += q) times.push_back(t);
    times.push_back(p * q);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    Arc2D arc;
    for (long long t : times) {
        long long xn = fold(cx + t, p);
        long long yn = fold(cy + t, q);
        arc.pts.push_back(Pt2{xn + yn, xn - yn});
    }
    require(arc.pts.size() >= 2, "billiard arc degenerate");
    for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i) {
        Pt2 a = arc.pts[i], b = arc.pts[i + 1];
        require((a.x == b.x) != (a.y == b.y), "billiard arc step is not axis-parallel");
    }
    return arc;
}

// Intersection box of two axis-parallel planar segments; nullopt if disjoint.
std::optional<std::pair<Pt2, Pt2>> seg_intersection(const Seg2& s, const Seg2& t) {
    long long xlo = std::max(s.xmin(), t.xmin());
    long long xhi = std::min(s.xmax(), t.xmax());
    long long ylo = std::max(s.ymin(), t.ymin());
    long long yhi = std::min(s.ymax(), t.ymax());
    if (xlo > xhi || ylo > yhi) return std::nullopt;
    return std::make_pair(Pt2{xlo, ylo}, Pt2{xhi, yhi});
}

bool shares_endpoint_only(const Seg2& s, const Seg2& t) {
    auto box = seg_intersection(s, t);
    if (!box) return true;  // disjoint is fine too
    if (box->first != box->second) return false;
    Pt2 p = box->first;
    bool end_s = (p == s.a || p == s.b);
    bool end_t = (p == t.a || p == t.b);
    return end_s && end_t;
}

struct SegSoup {
    std::vector<Seg2> segs;

    int find_exact(Pt2 a, Pt2 b) const {
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if ((segs[i].a == a && segs[i].b == b) || (segs[i].a == b && segs[i].b == a))
                return static_cast<int>(i);
        }
        return -1;
    }

    // Segments having p as an endpoint, excluding index `skip`.
    std::vector<int> at_endpoint(Pt2 p, int skip = -1) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (static_cast<int>(i) == skip) continue;
            if (segs[i].a == p || segs[i].b == p) out.push_back(static_cast<int>(i));
        }
        return out;
    }
};

// Moves one horizontal to a new height, reconnecting each end: an attached
// vertical follows with its junction end; a bare arc endpoint gets a fresh
// connecting vertical instead (the endpoint itself stays put).
void move_horizontal_to(SegSoup& soup, Pt2 a, Pt2 b, long long new_y) {
    int hi = soup.find_exact(a, b);
    require(hi >= 0, "expected horizontal " + pt_str(a) + "-" + pt_str(b) + " is absent");
    for (Pt2 e : {a, b}) {
        auto attached = soup.at_endpoint(e, hi);
        require(attached.size() <= 1, "junction degree > 2 at " + pt_str(e));
        if (attached.empty()) {
            soup.segs.push_back(Seg2(e, Pt2{e.x, new_y}, SegTag::Moved));
        } else {
            Seg2& v = soup.segs[attached[0]];
            require(v.vertical(), "attached segment at " + pt_str(e) + " is not vertical");
            Pt2& junction = (v.a == e) ? v.a : v.b;
            junction.y = new_y;
            require(v.a.y != v.b.y, "attached vertical collapsed at " + pt_str(e));
        }
    }
    soup.segs[hi].a.y = new_y;
    soup.segs[hi].b.y = new_y;
    soup.segs[hi].tag = SegTag::Moved;
}

// True when the segment placement would improperly meet any live segment.
bool conflicts_any(const Seg2& s, const SegSoup& soup, const std::set<int>& ignore) {
    for (std::size_t i = 0; i < soup.segs.size(); ++i) {
        if (ignore.count(static_cast<int>(i))) continue;
        if (!shares_endpoint_only(s, soup.segs[i])) return true;
    }
    return false;
}

}  // namespace

Seg2::Seg2(Pt2 a_, Pt2 b_, SegTag tag_) : a(a_), b(b_), tag(tag_) {
    if (a == b || (a.x != b.x && a.y != b.y))
        throw ConstructionError("Seg2: endpoints must differ in exactly one coordinate");
}

std::vector<Arc2D> central_segments(long long p, long long q) {
    if (q < 1 || p <= q) throw std::domain_error("central_segments: requires p > q >= 1");
    if (gcd_ll(p, q) != 1) throw std::domain_error("central_segments: p and q must be coprime");

    // Square corners in numerator units: A=(0,0), B=(0,q), C=(p,q), D=(p,0).
    const std::vector<std::pair<long long, long long>> corners = {
        {0, 0}, {0, q}, {p, q}, {p, 0}};
    auto image = [&](std::pair<long long, long long> c) {
        return Pt2{c.first + c.second, c.first - c.second};
    };

    std::vector<Arc2D> arcs;
    std::set<std::pair<long long, long long>> used;
    for (auto c : corners) {
        if (used.count(c)) continue;
        Arc2D arc = trace_billiard_arc(p, q, c.first, c.second);
        require(arc.pts.front() == image(c), "billiard arc start mismatch");
        // Recover the numerator pair of the far endpoint to mark it used.
        long long ex = fold(c.first + p * q, p);
        long long ey = fold(c.second + p * q, q);
        require(arc.pts.back() == image({ex, ey}), "billiard arc end mismatch");
        used.insert(c);
        used.insert({ex, ey});
        arcs.push_back(std::move(arc));
    }
    require(arcs.size() == 2 && used.size() == 4, "billiard arcs must pair up the four corners");
    return arcs;
}

Sketch make_sketch(long long p, long long q, const std::vector<Arc2D>& arcs) {
    Sketch sk;
    sk.p = p;
    sk.q = q;
    for (const Arc2D& arc : arcs)
        for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i)
            sk.segs.push_back(Seg2(arc.pts[i], arc.pts[i + 1], SegTag::Central));
    return sk;
}

Sketch move_horizontals(Sketch sk) {
    const long long p = sk.p, q = sk.q;
    SegSoup soup{std::move(sk.segs)};
    for (long long i = 1; i <= q; ++i) {
        move_horizontal_to(soup, Pt2{p - i, p - i}, Pt2{p + i, p - i}, p + i);
        move_horizontal_to(soup, Pt2{q - i, -q + i}, Pt2{q + i, -q + i}, -q - i);
    }
    sk.segs = std::move(soup.segs);
    return sk;
}

Sketch reroute_long_horizontals(Sketch sk) {
    const long long p = sk.p, q = sk.q;
    SegSoup soup{std::move(sk.segs)};
    for (long long i = 1; i <= p - q - 1; ++i) {
        Pt2 left{p - q - i, p - q - i};
        Pt2 right{p + q - i, p - q - i};
        int hi = soup.find_exact(left, right);
        require(hi >= 0, "expected long horizontal at height " + std::to_string(p - q - i) +
                             " is absent");
        soup.segs.erase(soup.segs.begin() + hi);
        Pt2 c1{p - q - i, p + q + i}, c2{p + q + i, p + q + i}, c3{p + q + i, p - q - i};
        soup.segs.push_back(Seg2(left, c1, SegTag::Rerouted));
        soup.segs.push_back(Seg2(c1, c2, SegTag::Rerouted));
        soup.segs.push_back(Seg2(c2, c3, SegTag::Rerouted));
        soup.segs.push_back(Seg2(c3, right, SegTag::Rerouted));
    }
    sk.segs = std::move(soup.segs);
    return sk;
}

Sketch extend_boundary(Sketch sk) {
    const long long p = sk.p, q = sk.q;
    SegSoup soup{std::move(sk.segs)};

    auto extend_vertical = [&](Pt2 from, Pt2 to, Pt2 moved_end) -> int {
        int vi = soup.find_exact(from, to);
        require(vi >= 0,
                "expected boundary vertical " + pt_str(from) + "-" + pt_str(to) + " is absent");
        Seg2& v = soup.segs[vi];
        Pt2& e = (v.a == from) ? v.a : v.b;
        require(e == from, "boundary vertical orientation unexpected");
        e = moved_end;
        v.tag = SegTag::Extended;
        return vi;
    };

    // Left: (0,0)..(0,-2q) grows to (0,p)..(0,-2q).  Right: (p+q,p-q)..
    // (p+q,p+q) grows to (p+q,-q)..(p+q,p+q).
    int left = extend_vertical(Pt2{0, 0}, Pt2{0, -2 * q}, Pt2{0, p});
    int right = extend_vertical(Pt2{p + q, p - q}, Pt2{p + q, p + q}, Pt2{p + q, -q});

    // Horizontals now improperly crossed by either extension must drop below
    // them.  The crossed horizontals nest around x=p+q, so place the narrow
    // ones first; conflicts with not-yet-dropped ones are ignored while
    // searching (they will sink past later).
    std::vector<int> crossers;
    for (std::size_t i = 0; i < soup.segs.size(); ++i) {
        const Seg2& h = soup.segs[i];
        if (!h.horizontal()) continue;
        for (int b : {left, right})
            if (!shares_endpoint_only(h, soup.segs[b])) {
                crossers.push_back(static_cast<int>(i));
                break;
            }
    }
    std::sort(crossers.begin(), crossers.end(), [&](int a, int b) {
        long long wa = soup.segs[a].xmax() - soup.segs[a].xmin();
        long long wb = soup.segs[b].xmax() - soup.segs[b].xmin();
        if (wa != wb) return wa < wb;
        return soup.segs[a].ymin() > soup.segs[b].ymin();
    });

    std::set<int> pending(crossers.begin(), crossers.end());
    for (int hi : crossers) {
        pending.erase(hi);
        Seg2 h = soup.segs[hi];
        int va = -1, vb = -1;
        for (auto [end, slot] : {std::pair<Pt2, int*>{h.a, &va}, {h.b, &vb}}) {
            auto attached = soup.at_endpoint(end, hi);
            require(attached.size() == 1,
                    "dropped horizontal lacks a unique attached vertical at " + pt_str(end));
            *slot = attached[0];
            require(soup.segs[attached[0]].vertical(),
                    "attachment at " + pt_str(end) + " is not vertical");
        }
        const long long limit = 4 * p;
        bool placed = false;
        for (long long d = 1; d <= limit && !placed; ++d) {
            long long ny = h.a.y - d;
            Seg2 nh(Pt2{h.a.x, ny}, Pt2{h.b.x, ny}, SegTag::Moved);
            auto drag = [&](int vi, Pt2 end) -> std::optional<Seg2> {
                Seg2 v = soup.segs[vi];
                Pt2& junction = (v.a == end) ? v.a : v.b;
                junction.y = ny;
                if (v.a.y == v.b.y) return std::nullopt;
                return v;
            };
            auto nva = drag(va, h.a);
            auto nvb = drag(vb, h.b);
            if (!nva || !nvb) continue;
            std::set<int> ignore = pending;
            ignore.insert(hi);
            ignore.insert(va);
            ignore.insert(vb);
            bool ok = !conflicts_any(nh, soup, ignore) && !conflicts_any(*nva, soup, ignore) &&
                      !conflicts_any(*nvb, soup, ignore) && shares_endpoint_only(nh, *nva) &&
                      shares_endpoint_only(nh, *nvb) && shares_endpoint_only(*nva, *nvb);
            if (ok) {
                soup.segs[hi] = nh;
                soup.segs[va] = *nva;
                soup.segs[vb] = *nvb;
                placed = true;
            }
        }
        require(placed, "no drop offset within " + std::to_string(limit) +
                            " clears the crossed horizontal at height " +
                            std::to_string(h.a.y));
    }

    sk.segs = std::move(soup.segs);
    return sk;
}

RegularCircuit assemble_circuit(const Sketch& sk) {
    const long long p = sk.p, q = sk.q;
    const Pt2 v1{0, p}, v1p{p, p}, v2{q, -q}, v2p{p + q, -q};

    // Endpoint adjacency.
    std::map<Pt2, std::vector<int>> at;
    for (std::size_t i = 0; i < sk.segs.size(); ++i) {
        at[sk.segs[i].a].push_back(static_cast<int>(i));
        at[sk.segs[i].b].push_back(static_cast<int>(i));
    }
    std::vector<Pt2> ends;
    for (const auto& [pt, ids] : at) {
        require(ids.size() <= 2, "junction degree > 2 at " + pt_str(pt));
        if (ids.size() == 1) ends.push_back(pt);
    }
    std::set<Pt2> want{v1, v1p, v2, v2p};
    require(ends.size() == 4 && std::set<Pt2>(ends.begin(), ends.end()) == want,
            "labeled endpoints do not match the expected four");

    std::vector<bool> used(sk.segs.size(), false);
    auto walk = [&](Pt2 start) {
        std::vector<Pt2> path{start};
        Pt2 cur = start;
        int prev = -1;
        for (;;) {
            const auto& ids = at.at(cur);
            int next = -1;
            for (int id : ids)
                if (id != prev) next = id;
            if (next == -1) break;
            require(!used[next], "tracing revisited a segment at " + pt_str(cur));
            used[next] = true;
            const Seg2& s = sk.segs[next];
            cur = (s.a == cur) ? s.b : s.a;
            path.push_back(cur);
            prev = next;
            if (at.at(cur).size() == 1) break;
        }
        return path;
    };

    // The first path starts at v1; depending on the corner pairing of the
    // billiard arcs it may end at v'1 (p even), v'2 (p, q odd) or v2 (q even).
    std::vector<Pt2> raw1 = walk(v1);
    Pt2 e1 = raw1.back();
    require(e1 == v1p || e1 == v2p || e1 == v2, "first path ends away from the labels");
    Pt2 start2;
    if (e1 == v1p)
        start2 = v2;
    else if (e1 == v2p)
        start2 = v2;
    else
        start2 = v1p;
    std::vector<Pt2> raw2 = walk(start2);
    require(std::all_of(used.begin(), used.end(), [](bool b) { return b; }),
            "tracing left segments unused (stray component)");

    Pt2 e2 = raw2.back();
    {
        std::set<Pt2> seen{v1, e1, start2, e2};
        require(seen == want, "path endpoints do not exhaust the labels");
    }

    auto merge = [](const std::vector<Pt2>& pts) {
        Arc2D arc;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0 && i + 1 < pts.size()) {
                const Pt2 &a = pts[i - 1], &b = pts[i], &c = pts[i + 1];
                if ((a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y)) {
                    bool forward = (a.x == b.x) ? ((b.y > a.y) == (c.y > b.y))
                                                : ((b.x > a.x) == (c.x > b.x));
                    require(forward, "path doubles back at " + pt_str(b));
                    continue;
                }
            }
            arc.pts.push_back(pts[i]);
        }
        return arc;
    };

    RegularCircuit rc;
    rc.p = p;
    rc.q = q;
    rc.path1 = merge(raw1);
    rc.path2 = merge(raw2);
    rc.path2_joins_v2_to_v2p = (std::set<Pt2>{start2, e2} == std::set<Pt2>{v2, v2p});
    rc.circuit.arcs = {rc.path1, rc.path2};
    rc.circuit.labels = {{v1, v1p}, {v2, v2p}};

    // Census:  2p verticals and 2p-2 horizontals overall, 2p-1 maximal
    // segments per path, both paths starting and ending vertically, with the
    // vertical x-parities split between the paths.
    auto segments_of = [](const Arc2D& arc) {
        std::vector<Seg2> out;
        for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i)
            out.push_back(Seg2(arc.pts[i], arc.pts[i + 1]));
        return out;
    };
    auto s1 = segments_of(rc.path1), s2 = segments_of(rc.path2);
    long long verticals = 0, horizontals = 0;
    for (const auto& segs : {s1, s2})
        for (const Seg2& s : segs) (s.vertical() ? verticals : horizontals)++;
    require(verticals == 2 * p, "vertical census mismatch: got " + std::to_string(verticals));
    require(horizontals == 2 * p - 2,
            "horizontal census mismatch: got " + std::to_string(horizontals));
    require(static_cast<long long>(s1.size()) == 2 * p - 1 &&
                static_cast<long long>(s2.size()) == 2 * p - 1,
            "path segment count mismatch");
    require(s1.front().vertical() && s1.back().vertical() && s2.front().vertical() &&
                s2.back().vertical(),
            "paths must start and end with vertical segments");
    for (const Seg2& s : s1)
        require(!s.vertical() || s.a.x % 2 == 0, "path1 vertical with odd x");
    for (const Seg2& s : s2)
        require(!s.vertical() || (s.a.x % 2 + 2) % 2 == 1, "path2 vertical with even x");

    // Disjointness of the two arcs and simplicity of each.
    std::vector<std::pair<int, Seg2>> all;
    for (const Seg2& s : s1) all.emplace_back(0, s);
    for (const Seg2& s : s2) all.emplace_back(1, s);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            bool adjacent = all[i].first == all[j].first &&
                            (j == i + 1) /* consecutive along the same path */;
            if (adjacent) {
                auto box = seg_intersection(all[i].second, all[j].second);
                require(box && box->first == box->second,
                        "consecutive segments overlap beyond their junction");
            } else {
                require(!seg_intersection(all[i].second, all[j].second),
                        "circuit arcs are not disjoint");
            }
        }
    }

    RegularityReport reg = check_regular(rc.circuit);
    require(reg.ok, "assembled circuit is not regular: " +
                        (reg.violations.empty() ? std::string("?") : reg.violations.front()));
    return rc;
}

RegularityReport check_regular(const NCircuit& c) {
    RegularityReport rep;
    if (c.labels.empty() || c.arcs.empty()) {
        rep.ok = false;
        rep.violations.push_back("circuit has no labels or no arcs");
        return rep;
    }
    // Every arc endpoint must carry exactly one label.
    std::vector<Pt2> arc_ends;
    for (const Arc2D& a : c.arcs) {
        if (a.pts.size() < 2) {
            rep.ok = false;
            rep.violations.push_back("degenerate arc");
            return rep;
        }
        arc_ends.push_back(a.pts.front());
        arc_ends.push_back(a.pts.back());
    }
    std::vector<Pt2> label_pts;
    for (const auto& [u, v] : c.labels) {
        label_pts.push_back(u);
        label_pts.push_back(v);
    }
    std::sort(arc_ends.begin(), arc_ends.end());
    std::sort(label_pts.begin(), label_pts.end());
    if (arc_ends != label_pts) {
        rep.ok = false;
        rep.violations.push_back("labels do not coincide with arc endpoints");
    }

    const auto n = c.labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [u, v] = c.labels[i];
        if (u.x != v.x && u.y != v.y) {
            rep.ok = false;
            rep.violations.push_back("pair " + std::to_string(i + 1) +
                                     " is not axis-aligned (condition 1)");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto [xi_lo, xi_hi] = std::minmax(c.labels[i].first.x, c.labels[i].second.x);
            auto [xj_lo, xj_hi] = std::minmax(c.labels[j].first.x, c.labels[j].second.x);
            auto [yi_lo, yi_hi] = std::minmax(c.labels[i].first.y, c.labels[i].second.y);
            auto [yj_lo, yj_hi] = std::minmax(c.labels[j].first.y, c.labels[j].second.y);
            bool x_disjoint = xi_hi < xj_lo || xj_hi < xi_lo;
            bool y_disjoint = yi_hi < yj_lo || yj_hi < yi_lo;
            if (!x_disjoint && !y_disjoint) {
                rep.ok = false;
                rep.violations.push_back("pairs " + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) +
                                         " overlap in both coordinates (condition 2)");
            }
        }
    }
    return rep;
}

RegularCircuit build_circuit(long long p, long long q) {
    Sketch sk = make_sketch(p, q, central_segments(p, q));
    sk = move_horizontals(std::move(sk));
    sk = reroute_long_horizontals(std::move(sk));
    sk = extend_boundary(std::move(sk));
    return assemble_circuit(sk);
}

}  // namespace ratlink
