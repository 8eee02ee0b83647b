#include "ratlink/io.hpp"

#include <sstream>

#include "json.hpp"

namespace ratlink {

namespace {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Baseline: return "baseline";
        case Stage::CornerReduced: return "corner";
        case Stage::Final: return "final";
    }
    return "?";
}

Stage stage_from(const std::string& s) {
    if (s == "baseline") return Stage::Baseline;
    if (s == "corner") return Stage::CornerReduced;
    if (s == "final") return Stage::Final;
    throw std::invalid_argument("unknown stage: " + s);
}

}  // namespace

std::string emit_json(const LiftedLink& ll) {
    nlohmann::json j;
    j["p"] = ll.p;
    j["q"] = ll.q;
    j["components"] = ll.component_count();
    nlohmann::json loops = nlohmann::json::array();
    for (const auto& loop : ll.link.loops) {
        nlohmann::json l = nlohmann::json::array();
        for (const Point3& p : loop) l.push_back({p.x, p.y, p.z});
        loops.push_back(std::move(l));
    }
    j["loops"] = std::move(loops);
    StickCensus c = ll.census();
    j["stick_counts"] = {{"x", c.x}, {"y", c.y}, {"z", c.z}};
    j["stage"] = stage_name(ll.stage);
    return j.dump(2) + "\n";
}

LiftedLink parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LiftedLink ll;
    ll.p = j.at("p").get<long long>();
    ll.q = j.at("q").get<long long>();
    ll.stage = stage_from(j.at("stage").get<std::string>());
    for (const auto& loop : j.at("loops")) {
        std::vector<Point3> pts;
        for (const auto& v : loop) {
            if (!v.is_array() || v.size() != 3)
                throw std::invalid_argument("loop vertex must be [x,y,z]");
            pts.push_back(Point3{v[0].get<long long>(), v[1].get<long long>(),
                                 v[2].get<long long>()});
        }
        ll.link.loops.push_back(std::move(pts));
    }
    StickCensus c = ll.census();
    const auto& sc = j.at("stick_counts");
    if (sc.at("x").get<long long>() != c.x || sc.at("y").get<long long>() != c.y ||
        sc.at("z").get<long long>() != c.z)
        throw std::invalid_argument("stick_counts disagree with the loops");
    if (j.at("components").get<int>() != ll.component_count())
        throw std::invalid_argument("component count disagrees with the loops");
    ll.two_component = ll.component_count() == 2;
    return ll;
}

std::string emit_obj(const LiftedLink& ll) {
    std::ostringstream os;
    os << "# rational " << ll.p << "/" << ll.q << " link, stage " << stage_name(ll.stage)
       << "\n";
    int base = 1;
    std::vector<int> starts;
    for (const auto& loop : ll.link.loops) {
        starts.push_back(base);
        for (const Point3& p : loop) os << "v " << p.x << " " << p.y << " " << p.z << "\n";
        base += static_cast<int>(loop.size());
    }
    for (std::size_t li = 0; li < ll.link.loops.size(); ++li) {
        os << "l";
        int n = static_cast<int>(ll.link.loops[li].size());
        for (int i = 0; i < n; ++i) os << " " << starts[li] + i;
        os << " " << starts[li] << "\n";
    }
    return os.str();
}

std::string emit_svg(const RegularCircuit& rc) {
    const long long px = 10;
    long long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const Arc2D* arc : {&rc.path1, &rc.path2})
        for (const Pt2& p : arc->pts) {
            if (first) {
                xmin = xmax = p.x;
                ymin = ymax = p.y;
                first = false;
            }
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    const long long margin = 2;
    xmin -= margin;
    ymin -= margin;
    xmax += margin;
    ymax += margin;
    auto X = [&](long long x) { return (x - xmin) * px; };
    auto Y = [&](long long y) { return (ymax - y) * px; };  // flip for screen coords

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(xmax) << "\" height=\""
       << Y(ymin) << "\" viewBox=\"0 0 " << X(xmax) << " " << Y(ymin) << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* colors[2] = {"#1f77b4", "#d62728"};
    int ci = 0;
    for (const Arc2D* arc : {&rc.path1, &rc.path2}) {
        os << "  <polyline fill=\"none\" stroke=\"" << colors[ci++]
           << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < arc->pts.size(); ++i) {
            if (i) os << " ";
            os << X(arc->pts[i].x) << "," << Y(arc->pts[i].y);
        }
        os << "\"/>\n";
    }
    struct Lbl {
        Pt2 at;
        const char* name;
    };
    const Lbl labels[4] = {{rc.v1(), "v1"}, {rc.v1p(), "v1'"}, {rc.v2(), "v2"},
                           {rc.v2p(), "v2'"}};
    for (const Lbl& l : labels) {
        os << "  <circle cx=\"" << X(l.at.x) << "\" cy=\"" << Y(l.at.y)
           << "\" r=\"4\" fill=\"black\"/>\n";
        os << "  <text x=\"" << X(l.at.x) + 6 << "\" y=\"" << Y(l.at.y) - 6
           << "\" font-size=\"12\" font-family=\"sans-serif\">" << l.name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ratlink
