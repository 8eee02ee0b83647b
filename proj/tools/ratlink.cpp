#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ratlink/diagram.hpp"
#include "ratlink/io.hpp"
#include "ratlink/lift.hpp"
#include "ratlink/tangle.hpp"
#include "ratlink/verify.hpp"

namespace {

int write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return 0;
    }
    std::ofstream os(path);
    if (!os) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return 2;
    }
    os << content;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice stick embeddings of rational p/q-links with 4 z-sticks"};
    app.require_subcommand(1);

    // build
    long long p = 0, q = 0;
    std::string format = "json", out_path, stage = "final";
    auto* build = app.add_subcommand("build", "construct one embedding and export it");
    build->add_option("p", p, "numerator (p > q)")->required();
    build->add_option("q", q, "denominator")->required();
    build->add_option("--format", format, "json, obj or svg")
        ->check(CLI::IsMember({"json", "obj", "svg"}));
    build->add_option("--out", out_path, "output file (default: stdout)");
    build->add_option("--stage", stage, "baseline, corner or final")
        ->check(CLI::IsMember({"baseline", "corner", "final"}));

    // verify
    long long max_p = 10, jones_max_p = 0;
    int threads = 0;
    auto* verify = app.add_subcommand("verify", "sweep all coprime pairs and print a table");
    verify->add_option("--max-p", max_p, "largest p in the sweep");
    verify->add_option("--jones-max-p", jones_max_p,
                       "compute Jones/determinant columns up to this p");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");

    // tangle
    auto* tangle = app.add_subcommand("tangle", "print the twist trace for p/q");
    long long tp = 0, tq = 0;
    tangle->add_option("p", tp, "numerator")->required();
    tangle->add_option("q", tq, "denominator")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) {
            ratlink::BuildStages stages = ratlink::build_all_stages(p, q);
            const ratlink::LiftedLink& ll = stage == "baseline" ? stages.baseline
                                            : stage == "corner" ? stages.corner_reduced
                                                                : stages.final_link;
            ratlink::StickCensus c = ll.census();
            std::cerr << "rational " << p << "/" << q << " link, stage " << stage << ": "
                      << c.total() << " sticks (x:" << c.x << " y:" << c.y << " z:" << c.z
                      << "), " << ll.component_count() << " component(s)\n";
            std::string payload;
            if (format == "json")
                payload = ratlink::emit_json(ll);
            else if (format == "obj")
                payload = ratlink::emit_obj(ll);
            else
                payload = ratlink::emit_svg(stages.circuit);
            return write_out(out_path, payload);
        }
        if (verify->parsed()) {
            ratlink::VerifyOptions opts;
            opts.max_p = max_p;
            opts.jones_max_p = jones_max_p;
            opts.threads = threads;
            ratlink::VerifyResult res = ratlink::run_verify(opts);
            std::cout << ratlink::format_table(res);
            return res.all_ok ? 0 : 1;
        }
        if (tangle->parsed()) {
            ratlink::Fraction f(tp, tq);
            if (tp <= tq) {
                std::cerr << "error: tangle requires p > q >= 1\n";
                return 2;
            }
            ratlink::ConwayWord w = ratlink::expand_fraction(f);
            std::cout << "fraction      " << ratlink::to_string(f) << "\n";
            std::cout << "conway word   " << ratlink::to_string(w) << "\n";
            std::cout << "value check   "
                      << ratlink::to_string(ratlink::evaluate_conway(w)) << "\n";
            std::cout << "pillow trace  ";
            auto trace = ratlink::pillow_trace(w);
            for (std::size_t i = 0; i < trace.size(); ++i) {
                if (i) std::cout << " -> ";
                std::cout << ratlink::to_string(trace[i]);
            }
            std::cout << "\n";
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
