// Acceptance suite: runs every gate criterion and prints one line per
// criterion.  Exit code 0 only if all criteria hold.

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

#include "ratlink/diagram.hpp"
#include "ratlink/io.hpp"
#include "ratlink/lift.hpp"
#include "ratlink/tangle.hpp"
#include "ratlink/verify.hpp"

using namespace ratlink;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << "  ["
              << seconds << " s]";
    if (!detail.empty()) std::cout << "\n      " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

std::vector<std::pair<long long, long long>> coprime_pairs(long long max_p) {
    std::vector<std::pair<long long, long long>> out;
    for (long long p = 2; p <= max_p; ++p)
        for (long long q = 1; q < p; ++q)
            if (gcd_ll(p, q) == 1) out.push_back({p, q});
    return out;
}

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion_1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto [p, q, want] :
         {std::tuple<long long, long long, long long>{3, 1, 12}, {5, 1, 16}, {4, 1, 13}}) {
        long long got = build_lattice_link(p, q).census().total();
        if (got != want) {
            ok = false;
            detail << p << "/" << q << ": got " << got << ", want " << want << "; ";
        }
    }
    double t = secs(t0);
    if (t >= 1.0) {
        ok = false;
        detail << "exceeded the 1 s budget; ";
    }
    report(1, "known stick counts for 3/1, 5/1, 4/1", ok, t, detail.str());
}

void criterion_2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    int pairs = 0;
    for (auto [p, q] : coprime_pairs(30)) {
        ++pairs;
        try {
            BuildStages st = build_all_stages(p, q);
            bool pair_ok = true;
            std::ostringstream why;
            for (const LiftedLink* ll :
                 {&st.baseline, &st.corner_reduced, &st.final_link}) {
                StickCensus c = ll->census();
                long long want = formula_total(ll->stage, p, ll->two_component);
                if (c.total() != want) {
                    pair_ok = false;
                    why << to_string(ll->stage) << " total " << c.total() << " != " << want
                        << "; ";
                }
                if (c.z != 4) {
                    pair_ok = false;
                    why << to_string(ll->stage) << " z-count " << c.z << "; ";
                }
                if (!validate_embedding(ll->link).ok) {
                    pair_ok = false;
                    why << to_string(ll->stage) << " embedding invalid; ";
                }
            }
            if (!pair_ok) {
                ok = false;
                detail << p << "/" << q << ": " << why.str();
                if (p == 2 * q)
                    detail << "(the corner detour degenerates at p=2q, removing two sticks; "
                              "totals 4p+3 and 2p+5 are unreachable there -- no 9-stick "
                              "2-component lattice link exists by stick-count parity) ";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail << p << "/" << q << ": " << e.what() << "; ";
        }
    }
    double t = secs(t0);
    if (t >= 10.0) {
        ok = false;
        detail << "exceeded the 10 s budget; ";
    }
    report(2, "stage totals/validity/z-count sweep over " + std::to_string(pairs) +
                  " pairs (p <= 30)",
           ok, t, detail.str());
}

void criterion_3() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto [p, q] : coprime_pairs(30)) {
        RegularCircuit rc = build_circuit(p, q);
        long long verticals = 0, horizontals = 0;
        bool parity_ok = true;
        for (int side = 0; side < 2; ++side) {
            const Arc2D& arc = side == 0 ? rc.path1 : rc.path2;
            if (static_cast<long long>(arc.pts.size()) != 2 * p) {
                ok = false;
                detail << p << "/" << q << ": path has " << arc.pts.size() - 1
                       << " segments; ";
            }
            for (std::size_t i = 0; i + 1 < arc.pts.size(); ++i) {
                bool v = arc.pts[i].x == arc.pts[i + 1].x;
                (v ? verticals : horizontals)++;
                if (v) {
                    long long parity = ((arc.pts[i].x % 2) + 2) % 2;
                    if (parity != side) parity_ok = false;
                }
            }
        }
        if (verticals != 2 * p || horizontals != 2 * p - 2 || !parity_ok) {
            ok = false;
            detail << p << "/" << q << ": census v=" << verticals << " h=" << horizontals
                   << (parity_ok ? "" : " parity broken") << "; ";
        }
    }
    report(3, "circuit census: 2p verticals, 2p-2 horizontals, 2p-1 per path, parity split",
           ok, secs(t0), detail.str());
}

void criterion_4() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    long long checked = 0;
    for (long long p = 2; p <= 200; ++p)
        for (long long q = 1; q < p; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            ++checked;
            PillowForm f = pillow_of_word(expand_fraction(Fraction(p, q)));
            if (f.t != p || f.s != q) {
                ok = false;
                detail << p << "/" << q << " -> (" << f.t << "," << f.s << "); ";
            }
        }
    double t = secs(t0);
    if (t >= 1.0) {
        ok = false;
        detail << "exceeded the 1 s budget; ";
    }
    report(4, "pillowcase identity over " + std::to_string(checked) + " fractions (p <= 200)",
           ok, t, detail.str());
}

void criterion_5() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto [p, q] : coprime_pairs(10)) {
        LaurentPoly built =
            normalized_jones(project(build_lattice_link(p, q).link).diagram);
        LaurentPoly ref =
            normalized_jones(reference_diagram(expand_fraction(Fraction(p, q))));
        if (built != ref) {
            ok = false;
            detail << "jones mismatch at " << p << "/" << q << "; ";
        }
    }
    for (auto [p, q] : coprime_pairs(12)) {
        long long det = determinant(project(build_lattice_link(p, q).link).diagram);
        if (det != p) {
            ok = false;
            detail << "determinant " << det << " != " << p << " at " << p << "/" << q
                   << "; ";
        }
    }
    double t = secs(t0);
    if (t >= 120.0) {
        ok = false;
        detail << "exceeded the 120 s budget; ";
    }
    report(5, "normalized Jones vs reference (p <= 10) and determinant = p (p <= 12)", ok, t,
           detail.str());
}

void criterion_6() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto [p, q] : coprime_pairs(30)) {
        int comps = build_lattice_link(p, q).component_count();
        if (comps != (p % 2 == 0 ? 2 : 1)) {
            ok = false;
            detail << p << "/" << q << ": " << comps << " components; ";
        }
    }
    for (auto [p, q] : coprime_pairs(10)) {
        int comps = component_count(project(build_lattice_link(p, q).link).diagram);
        if (comps != (p % 2 == 0 ? 2 : 1)) {
            ok = false;
            detail << p << "/" << q << " (diagram): " << comps << " components; ";
        }
    }
    report(6, "component count is 2 exactly for even p", ok, secs(t0), detail.str());
}

void criterion_7() {
    auto t0 = Clock::now();
    std::ostringstream detail;
    long long total = build_lattice_link(2, 1).census().total();
    bool nine = (total == 9);
    if (!nine)
        detail << "build(2,1) yields " << total
               << " sticks, not 9: the p=2q corner detour degenerates, and a 9-stick "
                  "2-component lattice link cannot exist at all (stick-count parity); "
                  "8 equals the known lattice stick number. ";
    VerifyOptions opts;
    opts.max_p = 2;
    VerifyResult vr = run_verify(opts);
    bool flagged = false;
    for (const auto& row : vr.rows)
        if (row.p == 2 && row.q == 1 && row.notes.find("bound not tight") != std::string::npos)
            flagged = true;
    if (!flagged) detail << "verify table does not flag 2/1 as 'bound not tight'. ";
    report(7, "non-tightness documentation for 2/1 (9 sticks expected, table flag)",
           nine && flagged, secs(t0), detail.str());
}

void criterion_8() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    int compared = 0;
    BracketOptions naive;
    naive.engine = BracketEngine::Naive;
    for (auto [p, q] : coprime_pairs(10)) {
        Diagram ref = reference_diagram(expand_fraction(Fraction(p, q)));
        Diagram built = project(build_lattice_link(p, q).link).diagram;
        for (const Diagram* d : {&ref, &built}) {
            if (d->crossing_count() > 8) continue;
            ++compared;
            if (kauffman_bracket(*d, naive) != kauffman_bracket(*d)) {
                ok = false;
                detail << "engines disagree at " << p << "/" << q << "; ";
            }
        }
    }
    report(8, "naive and memoized brackets agree on all sweep diagrams with <= 8 crossings (" +
                  std::to_string(compared) + " diagrams)",
           ok, secs(t0), detail.str());
}

void general_bound_note() {
    // The verify table carries a computed column comparing 2p+6 with the
    // generic 3c+2 count at c=p; it flips exactly at p=5.
    bool ok = true;
    for (long long p = 2; p <= 30; ++p) {
        bool better = (2 * p + 6) < (3 * p + 2);
        if (better != (p > 4)) ok = false;
    }
    std::cout << (ok ? "PASS" : "FAIL")
              << "  note: 2p+6 < 3p+2 exactly when p > 4 (verify-table column)\n";
    if (!ok) ++failures;
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n================\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    general_bound_note();
    if (failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << failures << " criterion(s) failed\n";
    return 1;
}
