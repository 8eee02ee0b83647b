#include <sstream>

#include "doctest.h"
#include "ratlink/io.hpp"
#include "ratlink/verify.hpp"

using namespace ratlink;

TEST_CASE("json round trip is field-exact") {
    for (auto [p, q] : {std::pair<long long, long long>{3, 1}, {4, 1}, {5, 2}}) {
        LiftedLink ll = build_lattice_link(p, q);
        LiftedLink back = parse_json(emit_json(ll));
        CHECK(back.p == ll.p);
        CHECK(back.q == ll.q);
        CHECK(back.stage == ll.stage);
        CHECK(back.link.loops == ll.link.loops);
        CHECK(back.census() == ll.census());
        CHECK(emit_json(back) == emit_json(ll));
    }
}

TEST_CASE("json parser rejects inconsistent payloads") {
    LiftedLink ll = build_lattice_link(3, 1);
    std::string text = emit_json(ll);
    auto pos = text.find("\"x\": 4");
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos, 6, "\"x\": 9");
    CHECK_THROWS_AS(parse_json(broken), std::invalid_argument);
}

TEST_CASE("obj loops close on their first index exactly once") {
    LiftedLink ll = build_lattice_link(4, 1);
    std::string obj = emit_obj(ll);
    std::istringstream is(obj);
    std::string line;
    int l_lines = 0;
    while (std::getline(is, line)) {
        if (line.rfind("l ", 0) != 0) continue;
        ++l_lines;
        std::istringstream ls(line.substr(2));
        std::vector<int> idx;
        int v;
        while (ls >> v) idx.push_back(v);
        REQUIRE(idx.size() >= 5);
        CHECK(idx.front() == idx.back());
        int uses_of_first = 0;
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (idx[i] == idx.front()) ++uses_of_first;
        CHECK(uses_of_first == 1);
    }
    CHECK(l_lines == ll.component_count());
}

TEST_CASE("svg renders both paths and the four labels") {
    RegularCircuit rc = build_circuit(3, 1);
    std::string svg = emit_svg(rc);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("v1") != std::string::npos);
    CHECK(svg.find("v2'") != std::string::npos);
}

TEST_CASE("verify sweep passes and stays ordered") {
    VerifyOptions opts;
    opts.max_p = 7;
    opts.jones_max_p = 5;
    VerifyResult r = run_verify(opts);
    CHECK(r.all_ok);
    REQUIRE_FALSE(r.rows.empty());
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        bool ordered = r.rows[i - 1].p < r.rows[i].p ||
                       (r.rows[i - 1].p == r.rows[i].p && r.rows[i - 1].q < r.rows[i].q);
        CHECK(ordered);
    }
    for (const auto& row : r.rows) {
        if (row.p == 2 && row.q == 1)
            CHECK(row.notes.find("bound not tight") != std::string::npos);
        if (row.jones_checked) CHECK(row.jones_match);
    }
    std::string table = format_table(r);
    CHECK(table.find("2/1") != std::string::npos);
}

TEST_CASE("verify runs deterministically across thread counts") {
    VerifyOptions a;
    a.max_p = 6;
    a.jones_max_p = 4;
    a.threads = 1;
    VerifyOptions b = a;
    b.threads = 4;
    CHECK(format_table(run_verify(a)) == format_table(run_verify(b)));
}
