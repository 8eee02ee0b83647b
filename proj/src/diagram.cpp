#include "ratlink/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace ratlink {

namespace {

struct Dsu {
    std::vector<int> parent;

    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    // Returns true when x and y were already connected (the join closes a loop).
    bool join(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return true;
        parent[y] = x;
        return false;
    }
};

LaurentPoly delta_power(long long k) {
    if (k < 0) throw std::logic_error("delta_power: negative exponent");
    LaurentPoly r = LaurentPoly::one();
    LaurentPoly d = LaurentPoly::circle();
    for (long long i = 0; i < k; ++i) r *= d;
    return r;
}

// Exact long division by the loop value -A^2-A^-2; the bracket recursion
// always produces a multiple.
LaurentPoly divide_by_circle(const LaurentPoly& f) {
    std::map<long long, long long> r(f.terms().begin(), f.terms().end());
    LaurentPoly q;
    auto prune = [&](long long e) {
        auto it = r.find(e);
        if (it != r.end() && it->second == 0) r.erase(it);
    };
    while (!r.empty()) {
        auto it = r.rbegin();
        long long e = it->first, c = it->second;
        long long qe = e - 2;
        long long qc = -c;  // leading divisor term is -A^2
        q += LaurentPoly::monomial(qc, qe);
        // subtract qc*A^qe * (-A^2 - A^-2) = -qc*A^{qe+2} - qc*A^{qe-2}
        r[qe + 2] += qc;
        r[qe - 2] += qc;
        prune(qe + 2);
        prune(qe - 2);
    }
    return q;
}

int ang(long long dx, long long dy) {
    if (dx == 1 && dy == 0) return 0;
    if (dx == 0 && dy == 1) return 1;
    if (dx == -1 && dy == 0) return 2;
    if (dx == 0 && dy == -1) return 3;
    throw std::logic_error("ang: not a unit axis direction");
}

// ----- strand tracing --------------------------------------------------------

struct Strands {
    int count = 0;                   // strands through crossings
    std::vector<int> over_out_slot;  // crossing -> exit slot of the over passage
    std::vector<int> under_out_slot;
    std::vector<int> over_strand;
    std::vector<int> under_strand;
};

Strands trace_strands(const Diagram& d) {
    const int c = d.crossing_count();
    Strands out;
    out.over_out_slot.assign(c, -1);
    out.under_out_slot.assign(c, -1);
    out.over_strand.assign(c, -1);
    out.under_strand.assign(c, -1);

    std::vector<std::vector<std::pair<int, int>>> ends(d.n_arcs);
    for (int ci = 0; ci < c; ++ci)
        for (int s = 0; s < 4; ++s) ends[d.crossings[ci][s]].push_back({ci, s});
    for (int a = 0; a < d.n_arcs; ++a)
        if (ends[a].size() != 2)
            throw std::invalid_argument("diagram: arc " + std::to_string(a) + " has degree " +
                                        std::to_string(ends[a].size()));

    std::vector<int> strand_of_arc(d.n_arcs, -1);
    for (int a0 = 0; a0 < d.n_arcs; ++a0) {
        if (strand_of_arc[a0] != -1) continue;
        int strand = out.count++;
        int arc = a0;
        int from_ci = ends[a0][0].first, from_slot = ends[a0][0].second;
        while (strand_of_arc[arc] == -1) {
            strand_of_arc[arc] = strand;
            auto [c1, s1] = ends[arc][0];
            if (c1 == from_ci && s1 == from_slot) std::tie(c1, s1) = ends[arc][1];
            int exit = (s1 + 2) % 4;
            if (s1 % 2 == 0) {
                out.over_out_slot[c1] = exit;
                out.over_strand[c1] = strand;
            } else {
                out.under_out_slot[c1] = exit;
                out.under_strand[c1] = strand;
            }
            from_ci = c1;
            from_slot = exit;
            arc = d.crossings[c1][exit];
        }
    }
    for (int ci = 0; ci < c; ++ci)
        if (out.over_out_slot[ci] < 0 || out.under_out_slot[ci] < 0)
            throw std::logic_error("strand tracing missed a crossing passage");
    return out;
}

// ----- bracket engines -------------------------------------------------------

LaurentPoly bracket_naive(const Diagram& d) {
    const int c = d.crossing_count();
    LaurentPoly total;
    for (unsigned long long state = 0; state < (1ull << c); ++state) {
        Dsu dsu(d.n_arcs);
        long long closures = 0;
        long long a_minus_b = 0;
        for (int ci = 0; ci < c; ++ci) {
            const auto& e = d.crossings[ci];
            bool a_side = ((state >> ci) & 1) == 0;
            a_minus_b += a_side ? 1 : -1;
            int p0 = a_side ? e[0] : e[1];
            int p1 = a_side ? e[1] : e[2];
            int q0 = a_side ? e[2] : e[3];
            int q1 = a_side ? e[3] : e[0];
            if (dsu.join(p0, p1)) ++closures;
            if (dsu.join(q0, q1)) ++closures;
        }
        total += delta_power(closures + d.free_loops - 1).shifted(1, a_minus_b);
    }
    return total;
}

// Crossing list with arc ids renumbered by first occurrence.
std::vector<int> canonical_key(const std::vector<std::array<int, 4>>& cr) {
    std::map<int, int> rename;
    std::vector<int> key;
    key.reserve(cr.size() * 4);
    for (const auto& e : cr)
        for (int s = 0; s < 4; ++s) {
            auto it = rename.try_emplace(e[s], static_cast<int>(rename.size())).first;
            key.push_back(it->second);
        }
    return key;
}

// Join arcs u~v across the crossing list; u==v closes a circle.
std::vector<std::array<int, 4>> splice(std::vector<std::array<int, 4>> cr, int u, int v,
                                       long long& closures) {
    if (u == v) {
        ++closures;
        return cr;
    }
    for (auto& e : cr)
        for (int s = 0; s < 4; ++s)
            if (e[s] == v) e[s] = u;
    return cr;
}

struct MemoBracket {
    std::map<std::vector<int>, LaurentPoly> memo;

    // Sum over smoothing states of A^(a-b) * delta^(closed circles).
    LaurentPoly eval(std::vector<std::array<int, 4>> cr) {
        if (cr.empty()) return LaurentPoly::one();
        std::vector<int> key = canonical_key(cr);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        LaurentPoly result;
        bool reduced = false;
        // Kink shortcut: an arc occupying two adjacent slots contributes a
        // factor -A^3 (A-side pair) or -A^-3 (B-side pair).
        for (std::size_t ci = 0; ci < cr.size() && !reduced; ++ci) {
            const auto e = cr[ci];
            for (int s = 0; s < 4 && !reduced; ++s) {
                if (e[s] != e[(s + 1) % 4]) continue;
                bool a_pair = (s == 0 || s == 2);
                int u = e[(s + 2) % 4], v = e[(s + 3) % 4];
                auto rest = cr;
                rest.erase(rest.begin() + static_cast<long>(ci));
                long long closures = 0;
                rest = splice(std::move(rest), u, v, closures);
                result = eval(std::move(rest));
                result = result.shifted(-1, a_pair ? 3 : -3);
                result *= delta_power(closures);
                reduced = true;
            }
        }
        if (!reduced) {
            const auto e = cr.back();
            auto rest = cr;
            rest.pop_back();
            for (bool a_side : {true, false}) {
                int p0 = a_side ? e[0] : e[1];
                int p1 = a_side ? e[1] : e[2];
                int q0 = a_side ? e[2] : e[3];
                int q1 = a_side ? e[3] : e[0];
                long long closures = 0;
                auto joined = splice(rest, p0, p1, closures);
                if (p0 != p1) {
                    if (q0 == p1) q0 = p0;
                    if (q1 == p1) q1 = p0;
                }
                joined = splice(std::move(joined), q0, q1, closures);
                LaurentPoly part = eval(std::move(joined));
                part = part.shifted(1, a_side ? 1 : -1);
                part *= delta_power(closures);
                result += part;
            }
        }
        memo.emplace(std::move(key), result);
        return result;
    }
};

bool poly_less(const LaurentPoly& a, const LaurentPoly& b) {
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == ea && ib != eb;
}

}  // namespace

void check_diagram(const Diagram& d) {
    std::vector<int> uses(d.n_arcs, 0);
    for (const auto& e : d.crossings)
        for (int s = 0; s < 4; ++s) {
            if (e[s] < 0 || e[s] >= d.n_arcs)
                throw std::invalid_argument("diagram: arc id out of range");
            ++uses[e[s]];
        }
    for (int a = 0; a < d.n_arcs; ++a)
        if (uses[a] != 2)
            throw std::invalid_argument("diagram: arc " + std::to_string(a) + " used " +
                                        std::to_string(uses[a]) + " times, expected 2");
    if (d.free_loops < 0) throw std::invalid_argument("diagram: negative free loop count");
    if (d.crossings.empty() && d.free_loops == 0 && d.n_arcs == 0)
        throw std::invalid_argument("diagram: empty");
}

int component_count(const Diagram& d) {
    if (d.n_arcs == 0) return d.free_loops;
    return trace_strands(d).count + d.free_loops;
}

LaurentPoly kauffman_bracket(const Diagram& d, const BracketOptions& opts) {
    check_diagram(d);
    const int c = d.crossing_count();
    if (c == 0) return delta_power(d.free_loops - 1);
    if (opts.engine == BracketEngine::Naive) {
        if (c > opts.max_naive_crossings)
            throw std::length_error("kauffman_bracket: " + std::to_string(c) +
                                    " crossings exceed the naive-engine limit of " +
                                    std::to_string(opts.max_naive_crossings));
        return bracket_naive(d);
    }
    if (c > opts.max_memo_crossings)
        throw std::length_error("kauffman_bracket: " + std::to_string(c) +
                                " crossings exceed the memo-engine limit of " +
                                std::to_string(opts.max_memo_crossings));
    MemoBracket mb;
    LaurentPoly hat = mb.eval(d.crossings);
    hat *= delta_power(d.free_loops);
    return divide_by_circle(hat);
}

LaurentPoly normalized_jones(const Diagram& d, const BracketOptions& opts) {
    LaurentPoly bracket = kauffman_bracket(d, opts);
    const int c = d.crossing_count();
    if (c == 0) return bracket;

    Strands st = trace_strands(d);
    // Crossing sign, fixed so that a Reidemeister-I kink cancels its own
    // bracket factor: positive when the under strand exits one rotation step
    // clockwise of the over strand.
    std::vector<int> sign(c);
    for (int ci = 0; ci < c; ++ci)
        sign[ci] = ((st.over_out_slot[ci] + 3) % 4 == st.under_out_slot[ci]) ? 1 : -1;

    // The bracket ignores orientation; the writhe does not.  Canonicalize over
    // relative orientation classes so any two diagrams of the same unoriented
    // link produce the same value.
    std::optional<LaurentPoly> best;
    const int k = st.count;
    const unsigned classes = 1u << (k - 1);
    for (unsigned mask = 0; mask < classes; ++mask) {
        long long w = 0;
        for (int ci = 0; ci < c; ++ci) {
            bool fo = st.over_strand[ci] > 0 && ((mask >> (st.over_strand[ci] - 1)) & 1);
            bool fu = st.under_strand[ci] > 0 && ((mask >> (st.under_strand[ci] - 1)) & 1);
            w += (fo != fu) ? -sign[ci] : sign[ci];
        }
        LaurentPoly f = bracket * LaurentPoly::writhe_factor(-w);
        if (!best || poly_less(f, *best)) best = f;
    }
    return *best;
}

long long determinant(const Diagram& d) {
    check_diagram(d);
    const int c = d.crossing_count();
    if (c == 0) {
        if (d.free_loops == 1) return 1;
        throw std::domain_error("determinant: split crossingless diagram");
    }
    if (d.free_loops > 0)
        throw std::domain_error("determinant: diagram has split crossingless components");

    auto dart = [](int ci, int s) { return 4 * ci + s; };
    std::vector<int> mate(4 * c, -1);
    {
        std::vector<std::vector<int>> of_arc(d.n_arcs);
        for (int ci = 0; ci < c; ++ci)
            for (int s = 0; s < 4; ++s) of_arc[d.crossings[ci][s]].push_back(dart(ci, s));
        for (const auto& pair : of_arc) {
            mate[pair[0]] = pair[1];
            mate[pair[1]] = pair[0];
        }
    }
    {
        Dsu dsu(c);
        for (int ci = 0; ci < c; ++ci)
            for (int s = 0; s < 4; ++s) dsu.join(ci, mate[dart(ci, s)] / 4);
        for (int ci = 0; ci < c; ++ci)
            if (dsu.find(ci) != dsu.find(0))
                throw std::domain_error("determinant: diagram is not connected");
    }

    // Faces: follow the arc, then turn one rotation step clockwise.
    std::vector<int> face(4 * c, -1);
    int n_faces = 0;
    for (int d0 = 0; d0 < 4 * c; ++d0) {
        if (face[d0] != -1) continue;
        int f = n_faces++;
        int cur = d0;
        while (face[cur] == -1) {
            face[cur] = f;
            int m = mate[cur];
            cur = 4 * (m / 4) + ((m % 4) + 3) % 4;
        }
    }
    if (n_faces != c + 2)
        throw std::logic_error("determinant: face count violates Euler's formula");

    // Checkerboard coloring: sectors around a crossing alternate.
    std::vector<int> color(n_faces, -1);
    std::vector<std::vector<int>> adj(n_faces);
    for (int ci = 0; ci < c; ++ci)
        for (int s = 0; s < 4; ++s) {
            int f1 = face[dart(ci, s)];
            int f2 = face[dart(ci, (s + 1) % 4)];
            adj[f1].push_back(f2);
            adj[f2].push_back(f1);
        }
    std::vector<int> stack{0};
    color[0] = 0;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int g2 : adj[f]) {
            if (color[g2] == -1) {
                color[g2] = 1 - color[f];
                stack.push_back(g2);
            } else if (color[g2] == color[f]) {
                throw std::logic_error("determinant: checkerboard coloring failed");
            }
        }
    }

    const int white = 0;
    std::vector<int> white_index(n_faces, -1);
    int m = 0;
    for (int f = 0; f < n_faces; ++f)
        if (color[f] == white) white_index[f] = m++;
    if (m <= 1) return 1;

    std::vector<std::vector<long long>> g(m, std::vector<long long>(m, 0));
    for (int ci = 0; ci < c; ++ci) {
        // Sector between slots s and s+1 is the face of dart (ci, s).
        int f0 = face[dart(ci, 0)], f1 = face[dart(ci, 1)];
        int f2 = face[dart(ci, 2)], f3 = face[dart(ci, 3)];
        if (color[f0] != color[f2] || color[f1] != color[f3] || color[f0] == color[f1])
            throw std::logic_error("determinant: sector coloring inconsistent");
        int eta = (color[f0] == white) ? 1 : -1;
        int fa = (color[f0] == white) ? f0 : f1;
        int fb = (color[f0] == white) ? f2 : f3;
        if (fa == fb) continue;
        g[white_index[fa]][white_index[fb]] -= eta;
        g[white_index[fb]][white_index[fa]] -= eta;
    }
    for (int i = 0; i < m; ++i) {
        long long diag = 0;
        for (int j = 0; j < m; ++j)
            if (j != i) diag += g[i][j];
        g[i][i] = -diag;
    }

    const int n = m - 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = g[i + 1][j + 1];
    __int128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == -1) return 0;
            std::swap(a[k], a[swap_row]);
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    __int128 det = (n == 0) ? 1 : a[n - 1][n - 1];
    if (det < 0) det = -det;
    if (det > (static_cast<__int128>(1) << 62))
        throw std::overflow_error("determinant: value out of range");
    return static_cast<long long>(det);
}

Diagram reference_diagram(const ConwayWord& word) {
    if (word.entries.empty()) throw std::domain_error("reference_diagram: empty word");

    int next_arc = 0;
    auto fresh = [&] { return next_arc++; };
    int top = fresh(), bottom = fresh();
    int nw = top, ne = top, sw = bottom, se = bottom;

    std::vector<std::array<int, 4>> crossings;
    bool horizontal = true;
    for (long long count : word.entries) {
        for (long long i = 0; i < count; ++i) {
            if (horizontal) {
                // Crossing added at the right; slots CCW are [NE, NW, SW, SE]
                // and the strand through SW-NE passes over.
                int a = fresh(), b = fresh();
                crossings.push_back({a, ne, se, b});
                ne = a;
                se = b;
            } else {
                // Crossing added below; the old SW and SE stubs enter its NW
                // and NE ends.
                int a = fresh(), b = fresh();
                crossings.push_back({se, sw, a, b});
                sw = a;
                se = b;
            }
        }
        horizontal = !horizontal;
    }

    // Numerator closure: top endpoints together, bottom endpoints together.
    Dsu dsu(next_arc);
    std::vector<int> closing;
    if (dsu.join(nw, ne)) closing.push_back(nw);
    if (dsu.join(sw, se)) closing.push_back(sw);
    int free_loops = 0;
    for (int u : closing) {
        bool in_crossing = false;
        for (const auto& e : crossings)
            for (int s = 0; s < 4; ++s)
                if (dsu.find(e[s]) == dsu.find(u)) in_crossing = true;
        if (!in_crossing) ++free_loops;
    }

    Diagram d;
    std::map<int, int> rename;
    for (auto& e : crossings) {
        std::array<int, 4> out{};
        for (int s = 0; s < 4; ++s) {
            int root = dsu.find(e[s]);
            out[s] = rename.try_emplace(root, static_cast<int>(rename.size())).first->second;
        }
        d.crossings.push_back(out);
    }
    d.n_arcs = static_cast<int>(rename.size());
    d.free_loops = free_loops;
    check_diagram(d);
    return d;
}

Diagram mirror(const Diagram& d) {
    Diagram m = d;
    for (auto& e : m.crossings) e = {e[1], e[2], e[3], e[0]};
    return m;
}

std::string pd_dump(const Diagram& d) {
    std::ostringstream os;
    os << "arcs " << d.n_arcs << " free_loops " << d.free_loops << "\n";
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const auto& e = d.crossings[i];
        os << "x" << i << ": " << e[0] << " " << e[1] << " " << e[2] << " " << e[3]
           << " over " << e[0] << "-" << e[2] << "\n";
    }
    return os.str();
}

// ----- projection ------------------------------------------------------------

namespace {

Point3 remap(const Point3& p, Axis axis) {
    switch (axis) {
        case Axis::Z: return p;
        case Axis::X: return Point3{p.y, p.z, p.x};
        case Axis::Y: return Point3{p.z, p.x, p.y};
    }
    return p;
}

struct PStick {
    int loop, idx;
    Point3 a, b;  // in traversal order

    bool flat() const { return a.z == b.z; }
    long long xlo() const { return std::min(a.x, b.x); }
    long long xhi() const { return std::max(a.x, b.x); }
    long long ylo() const { return std::min(a.y, b.y); }
    long long yhi() const { return std::max(a.y, b.y); }
};

bool adjacent_in_loop(const PStick& s, const PStick& t, int loop_len) {
    if (s.loop != t.loop) return false;
    int d = std::abs(s.idx - t.idx);
    return d == 1 || d == loop_len - 1;
}

}  // namespace

ProjectionResult project(const LatticeLink& link, const ProjectOptions& opts) {
    std::vector<std::vector<Point3>> loops;
    for (const auto& loop : link.loops) {
        std::vector<Point3> l;
        for (const Point3& p : loop) l.push_back(remap(p, opts.axis));
        loops.push_back(std::move(l));
    }

    struct Issue {
        int i, j;
        std::string what;
    };
    struct Crossing2D {
        long long x, y;
        int over, under;
    };
    struct Scan {
        std::vector<PStick> sticks;
        std::vector<int> loop_len;
        std::vector<Issue> issues;
        std::vector<Crossing2D> crossings;
    };

    auto scan = [](const std::vector<std::vector<Point3>>& lps) {
        Scan sc;
        for (std::size_t li = 0; li < lps.size(); ++li) {
            sc.loop_len.push_back(static_cast<int>(lps[li].size()));
            for (std::size_t i = 0; i < lps[li].size(); ++i)
                sc.sticks.push_back({static_cast<int>(li), static_cast<int>(i), lps[li][i],
                                     lps[li][(i + 1) % lps[li].size()]});
        }
        // Two sticks separated by one z-stick in the strand meet at that
        // stick's collapsed image point; that is an ordinary vertex of the
        // projected curve, not a violation.
        auto through_z_contact = [&](const PStick& s, const PStick& t, long long px,
                                     long long py) {
            if (s.loop != t.loop) return false;
            int n = sc.loop_len[s.loop];
            int lo = s.idx, hi = t.idx;
            int d = (hi - lo + n) % n;
            int mid;
            if (d == 2)
                mid = (lo + 1) % n;
            else if ((lo - hi + n) % n == 2)
                mid = (hi + 1) % n;
            else
                return false;
            // locate the middle stick
            for (const PStick& m : sc.sticks) {
                if (m.loop != s.loop || m.idx != mid) continue;
                return !m.flat() && m.a.x == px && m.a.y == py;
            }
            return false;
        };
        for (std::size_t i = 0; i < sc.sticks.size(); ++i) {
            for (std::size_t j = i + 1; j < sc.sticks.size(); ++j) {
                const PStick& s = sc.sticks[i];
                const PStick& t = sc.sticks[j];
                long long xlo = std::max(s.xlo(), t.xlo()), xhi = std::min(s.xhi(), t.xhi());
                long long ylo = std::max(s.ylo(), t.ylo()), yhi = std::min(s.yhi(), t.yhi());
                if (xlo > xhi || ylo > yhi) continue;
                bool adj = adjacent_in_loop(s, t, sc.loop_len[s.loop]);
                if (xlo != xhi || ylo != yhi) {
                    sc.issues.push_back({static_cast<int>(i), static_cast<int>(j),
                                         "collinear overlapping images"});
                    continue;
                }
                long long px = xlo, py = ylo;
                if (adj) {
                    Point3 shared{px + 1, py + 1, 0};
                    if (s.b == t.a)
                        shared = s.b;
                    else if (t.b == s.a)
                        shared = t.b;
                    if (shared.x == px && shared.y == py) continue;
                    sc.issues.push_back({static_cast<int>(i), static_cast<int>(j),
                                         "adjacent sticks align in projection"});
                    continue;
                }
                if (!s.flat() || !t.flat()) {
                    if (through_z_contact(s, t, px, py)) continue;
                    // a z-stick's own image may sit on its through-neighbors;
                    // handled above via the flat pair, so flag everything else
                    bool z_on_neighbor = false;
                    for (const PStick* zp : {&s, &t}) {
                        const PStick* fp = (zp == &s) ? &t : &s;
                        if (zp->flat() || !fp->flat()) continue;
                        // benign when the flat stick is strand-adjacent to the
                        // z-stick (shares its endpoint column)
                        if (adjacent_in_loop(*zp, *fp, sc.loop_len[zp->loop]))
                            z_on_neighbor = true;
                    }
                    if (!z_on_neighbor)
                        sc.issues.push_back(
                            {static_cast<int>(i), static_cast<int>(j),
                             "projection-axis stick image lies on another image"});
                    continue;
                }
                if (through_z_contact(s, t, px, py)) continue;
                bool s_int = (s.xlo() < px && px < s.xhi()) || (s.ylo() < py && py < s.yhi());
                bool t_int = (t.xlo() < px && px < t.xhi()) || (t.ylo() < py && py < t.yhi());
                if (s_int && t_int) {
                    if (s.a.z == t.a.z)
                        throw std::logic_error("transverse crossing at equal height");
                    bool s_over = s.a.z > t.a.z;
                    sc.crossings.push_back({px, py,
                                            s_over ? static_cast<int>(i) : static_cast<int>(j),
                                            s_over ? static_cast<int>(j) : static_cast<int>(i)});
                } else {
                    sc.issues.push_back({static_cast<int>(i), static_cast<int>(j),
                                         "image endpoint touches another image"});
                }
            }
        }
        return sc;
    };

    auto loops_key = [](const std::vector<std::vector<Point3>>& lps) {
        std::ostringstream os;
        for (const auto& l : lps) {
            for (const Point3& p : l) os << p.x << "," << p.y << "," << p.z << ";";
            os << "|";
        }
        return os.str();
    };

    // Move one stick a unit step sideways (P->Q becomes P->P+d->Q+d->Q) when
    // the swept rectangle touches nothing except the stick's own neighbors at
    // its endpoints.  Returns the resulting loops if the move is a valid
    // embedded isotopy.
    auto try_move = [&](const std::vector<std::vector<Point3>>& lps,
                        const std::vector<PStick>& sticks, int si, int perp_axis,
                        long long step) -> std::optional<std::vector<std::vector<Point3>>> {
        const PStick& s = sticks[si];
        Point3 delta{0, 0, 0};
        delta[perp_axis] = step;
        Point3 p = s.a, qv = s.b;
        Point3 p2{p.x + delta.x, p.y + delta.y, p.z + delta.z};
        Point3 q2{qv.x + delta.x, qv.y + delta.y, qv.z + delta.z};
        Point3 blo, bhi;
        for (int k = 0; k < 3; ++k) {
            blo[k] = std::min(std::min(p[k], qv[k]), std::min(p2[k], q2[k]));
            bhi[k] = std::max(std::max(p[k], qv[k]), std::max(p2[k], q2[k]));
        }
        for (std::size_t t = 0; t < sticks.size(); ++t) {
            if (static_cast<int>(t) == si) continue;
            const PStick& o = sticks[t];
            Point3 lo, hi;
            bool empty = false;
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::max(blo[k], std::min(o.a[k], o.b[k]));
                hi[k] = std::min(bhi[k], std::max(o.a[k], o.b[k]));
                if (lo[k] > hi[k]) empty = true;
            }
            if (empty) continue;
            if (!(lo == hi)) return std::nullopt;
            bool at_end = (lo == p || lo == qv);
            bool o_end = (o.a == lo || o.b == lo);
            if (!(at_end && o_end)) return std::nullopt;
        }
        const auto& lp = lps[s.loop];
        int n = static_cast<int>(lp.size());
        if (!(lp[s.idx] == s.a && lp[(s.idx + 1) % n] == s.b)) return std::nullopt;
        std::vector<Point3> rebuilt;
        for (int k = 0; k < n; ++k) {
            rebuilt.push_back(lp[k]);
            if (k == s.idx) {
                rebuilt.push_back(p2);
                rebuilt.push_back(q2);
            }
        }
        try {
            LatticeLink one = canonicalize({rebuilt});
            auto trial = lps;
            trial[s.loop] = one.loops[0];
            if (!validate_embedding(LatticeLink{trial}).ok) return std::nullopt;
            return trial;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };

    std::set<std::string> visited{loops_key(loops)};
    int moves = 0;
    for (;;) {
        LatticeLink cur{loops};
        ValidationReport vr = validate_embedding(cur);
        if (!vr.ok)
            throw NonRegularProjection("projection copy is not a valid embedding: " +
                                       vr.summary());

        Scan sc = scan(loops);
        if (sc.issues.empty()) {
            Diagram d;
            struct Event {
                int stick;
                long long t;
                int crossing;
            };
            std::vector<std::vector<Event>> per_loop(loops.size());
            for (std::size_t k = 0; k < sc.crossings.size(); ++k) {
                for (int si : {sc.crossings[k].over, sc.crossings[k].under}) {
                    const PStick& s = sc.sticks[si];
                    long long t = std::abs(sc.crossings[k].x - s.a.x) +
                                  std::abs(sc.crossings[k].y - s.a.y);
                    per_loop[s.loop].push_back({si, t, static_cast<int>(k)});
                }
            }
            int next_arc = 0;
            std::vector<std::vector<std::pair<int, int>>> slot_data(sc.crossings.size());
            for (std::size_t li = 0; li < loops.size(); ++li) {
                auto& ev = per_loop[li];
                if (ev.empty()) {
                    ++d.free_loops;
                    continue;
                }
                std::sort(ev.begin(), ev.end(), [&](const Event& a, const Event& b) {
                    if (sc.sticks[a.stick].idx != sc.sticks[b.stick].idx)
                        return sc.sticks[a.stick].idx < sc.sticks[b.stick].idx;
                    return a.t < b.t;
                });
                const int m = static_cast<int>(ev.size());
                const int first_arc = next_arc;
                next_arc += m;
                for (int e = 0; e < m; ++e) {
                    int out_arc = first_arc + e;
                    int in_arc = first_arc + (e + m - 1) % m;
                    const PStick& s = sc.sticks[ev[e].stick];
                    long long dx = (s.b.x > s.a.x) - (s.b.x < s.a.x);
                    long long dy = (s.b.y > s.a.y) - (s.b.y < s.a.y);
                    int out_b = ang(dx, dy);
                    int in_b = (out_b + 2) % 4;
                    slot_data[ev[e].crossing].push_back({out_b, out_arc});
                    slot_data[ev[e].crossing].push_back({in_b, in_arc});
                }
            }
            d.n_arcs = next_arc;

            for (std::size_t k = 0; k < sc.crossings.size(); ++k) {
                auto& sd = slot_data[k];
                if (sd.size() != 4) throw std::logic_error("crossing with bad slot count");
                std::sort(sd.begin(), sd.end());
                const PStick& os = sc.sticks[sc.crossings[k].over];
                long long dx = (os.b.x > os.a.x) - (os.b.x < os.a.x);
                long long dy = (os.b.y > os.a.y) - (os.b.y < os.a.y);
                int over_out = ang(dx, dy);
                int rot = -1;
                for (int r = 0; r < 4; ++r)
                    if (sd[r].first == over_out) rot = r;
                if (rot < 0) throw std::logic_error("over bearing missing at crossing");
                std::array<int, 4> e{};
                for (int s = 0; s < 4; ++s) e[s] = sd[(rot + s) % 4].second;
                d.crossings.push_back(e);
            }
            check_diagram(d);
            if (component_count(d) != static_cast<int>(loops.size()))
                throw std::logic_error("projection changed the component count");
            ProjectionResult out;
            out.diagram = d;
            out.perturbations = moves;
            out.projected = cur;
            return out;
        }

        if (!opts.auto_perturb)
            throw NonRegularProjection("projection not regular: " + sc.issues.front().what);
        if (moves >= opts.max_perturbations)
            throw NonRegularProjection("projection still irregular after " +
                                       std::to_string(moves) +
                                       " perturbations: " + sc.issues.front().what);

        // Greedy step: among all unit moves of sticks involved in issues, pick
        // the one leaving the fewest issues; the visited set rules out cycles.
        auto z_top = [&](int idx) {
            return std::max(sc.sticks[idx].a.z, sc.sticks[idx].b.z);
        };
        std::optional<std::vector<std::vector<Point3>>> best_trial;
        std::size_t best_score = 0;
        const std::size_t consider =
            std::min<std::size_t>(sc.issues.size(), 12);  // enough choice, bounded work
        for (std::size_t ii = 0; ii < consider; ++ii) {
            const Issue& issue = sc.issues[ii];
            int lower = (z_top(issue.i) <= z_top(issue.j)) ? issue.i : issue.j;
            int upper = (lower == issue.i) ? issue.j : issue.i;
            for (int choice : {lower, upper}) {
                const PStick& s = sc.sticks[choice];
                int axis_of = (s.a.x != s.b.x) ? 0 : (s.a.y != s.b.y ? 1 : 2);
                std::vector<std::pair<int, long long>> dirs;
                for (int k = 0; k < 2; ++k) {
                    if (k == axis_of) continue;
                    dirs.push_back({k, 1});
                    dirs.push_back({k, -1});
                }
                if (opts.variant % 2 == 1) std::reverse(dirs.begin(), dirs.end());
                for (auto [axis_k, step] : dirs) {
                    auto trial = try_move(loops, sc.sticks, choice, axis_k, step);
                    if (!trial) continue;
                    std::string key = loops_key(*trial);
                    if (visited.count(key)) continue;
                    std::size_t score = scan(*trial).issues.size();
                    if (!best_trial || score < best_score) {
                        best_trial = std::move(trial);
                        best_score = score;
                        if (opts.trace_perturbations)
                            fprintf(stderr,
                                    "perturb %d: candidate stick (%lld,%lld,%lld)-(%lld,%lld,"
                                    "%lld) axis %d step %lld -> %zu issues\n",
                                    moves, s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z, axis_k,
                                    step, score);
                    }
                }
            }
        }
        if (!best_trial)
            throw NonRegularProjection("no valid perturbation found for: " +
                                       sc.issues.front().what);
        loops = std::move(*best_trial);
        visited.insert(loops_key(loops));
        ++moves;
    }
}

}  // namespace ratlink
