#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmix/cayley.hpp"
#include "qmix/config.hpp"
#include "qmix/criteria.hpp"
#include "qmix/graphspec.hpp"
#include "qmix/ints.hpp"
#include "qmix/scheme.hpp"
#include "qmix/stars.hpp"
#include "qmix/times.hpp"
#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

namespace {

using nlohmann::json;
namespace q = qmix;

void emit_reports(const std::vector<q::gspec::Report>& reports, const std::string& format,
                  long flat_count) {
    if (format == "csv") {
        std::cout << q::gspec::report_csv_header() << "\n";
        for (const auto& r : reports) std::cout << q::gspec::report_csv_row(r) << "\n";
        std::cerr << "summary: " << reports.size() << " instances, " << flat_count << " flat, "
                  << (reports.size() - static_cast<std::size_t>(flat_count)) << " not flat\n";
        return;
    }
    for (const auto& r : reports) std::cout << q::gspec::report_json(r).dump() << "\n";
    std::cout << json{{"summary",
                       {{"instances", reports.size()},
                        {"flat", flat_count},
                        {"not_flat", reports.size() - static_cast<std::size_t>(flat_count)}}}}
                     .dump()
              << "\n";
}

int cmd_check(const std::string& graph, const std::string& time_s, bool cross,
              const std::string& format) {
    q::gspec::CheckOptions opt;
    opt.cross_check = cross;
    const q::gspec::Report rep =
        q::gspec::run_check(q::gspec::parse_graph(graph), q::walk::parse_time(time_s), opt);
    if (format == "csv") {
        std::cout << q::gspec::report_csv_header() << "\n"
                  << q::gspec::report_csv_row(rep) << "\n";
    } else {
        std::cout << q::gspec::report_json(rep).dump(2) << "\n";
    }
    return 0;
}

int cmd_survey(bool known, bool two_gen, bool q1_scan, int d, int samples, unsigned long seed,
               int jobs, const std::string& format) {
    if (known) {
        const std::vector<q::gspec::Report> reports = q::gspec::survey_known_examples(jobs);
        long flat = 0;
        for (const auto& r : reports)
            if (r.flat) ++flat;
        emit_reports(reports, format, flat);
        return 0;
    }
    if (two_gen) {
        const q::gspec::TwoGenSurvey sv = q::gspec::survey_two_gen(d, samples, seed, jobs);
        if (format == "csv") {
            std::cout << "a,b,symbolic,enumerator,agree\n";
            for (const auto& r : sv.rows)
                std::cout << '"' << r.a << "\",\"" << r.b << "\"," << r.symbolic << ','
                          << r.enumerator << ',' << r.agree << "\n";
            std::cerr << "summary: " << sv.instances << " instances, " << sv.agreements
                      << " agree\n";
        } else {
            for (const auto& r : sv.rows)
                std::cout << json{{"a", r.a},
                                  {"b", r.b},
                                  {"symbolic", r.symbolic},
                                  {"enumerator", r.enumerator},
                                  {"agree", r.agree}}
                                 .dump()
                          << "\n";
            std::cout << json{{"summary",
                               {{"d", sv.d},
                                {"instances", sv.instances},
                                {"agreements", sv.agreements},
                                {"all_agree", sv.agreements == sv.instances}}}}
                             .dump()
                      << "\n";
        }
        return 0;
    }
    if (q1_scan) {
        const q::gspec::Q1Survey sv = q::gspec::survey_q1_scan(d, samples, seed, jobs);
        if (format == "csv") {
            std::cout << "gens,triple_on_gamma,triple_on_all_cosets,counterexample\n";
            for (const auto& r : sv.rows)
                std::cout << '"' << r.gens << "\"," << r.triple_on_gamma << ','
                          << r.triple_on_all_cosets << ','
                          << (r.triple_on_gamma != r.triple_on_all_cosets) << "\n";
            std::cerr << "summary: " << sv.rows.size() << " samples, " << sv.counterexamples
                      << " counterexamples\n";
        } else {
            for (const auto& r : sv.rows)
                std::cout << json{{"gens", r.gens},
                                  {"triple_on_gamma", r.triple_on_gamma},
                                  {"triple_on_all_cosets", r.triple_on_all_cosets},
                                  {"counterexample", r.triple_on_gamma != r.triple_on_all_cosets}}
                                 .dump()
                          << "\n";
            std::cout << json{{"summary",
                               {{"d", sv.d},
                                {"samples", sv.samples},
                                {"seed", sv.seed},
                                {"counterexamples", sv.counterexamples}}}}
                             .dump()
                      << "\n";
        }
        return 0;
    }
    std::cerr << "survey: pick one of --known-examples, --two-gen, --q1-scan\n";
    return 2;
}

int cmd_times(const std::string& graph, long scan_n, const std::string& format) {
    const q::cayley::ConnectionSet c = q::gspec::connection_for(q::gspec::parse_graph(graph));
    const q::times::MixingTimeReport rep = q::times::mixing_time_report(c, scan_n);
    json cyc = json::array();
    for (std::size_t i = 0; i < rep.cyclotomic_orders.size(); ++i)
        cyc.push_back(json{{"n", rep.cyclotomic_orders[i].first},
                           {"multiplicity", rep.cyclotomic_orders[i].second},
                           {"time", q::walk::render_time(rep.times[i])}});
    const json out{{"graph", graph},
                   {"gcd_degree", q::poly::degree(rep.gcd)},
                   {"scan_bound", rep.scan_bound},
                   {"cyclotomic_times", cyc},
                   {"real_roots_z", rep.real_roots_z}};
    if (format == "csv") {
        std::cout << "n,multiplicity,time\n";
        for (std::size_t i = 0; i < rep.cyclotomic_orders.size(); ++i)
            std::cout << rep.cyclotomic_orders[i].first << ','
                      << rep.cyclotomic_orders[i].second << ','
                      << q::walk::render_time(rep.times[i]) << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_families(int q_arg, int kmax, const std::string& format) {
    std::vector<q::scheme::FamilyInstance> rows;
    for (int qq : {3, 4}) {
        if (q_arg != 0 && q_arg != qq) continue;
        const auto part = q::scheme::enumerate_families(kmax, qq);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const auto time_of = [](const q::scheme::FamilyInstance& f) {
        return f.q == 3 ? q::walk::rational_time(1, q::int_pow(q::Int(3), f.k))
                        : q::walk::rational_time(1, q::int_pow(q::Int(2), f.k + 1));
    };
    if (format == "csv") {
        std::cout << "q,d,r,k,time,condition\n";
        for (const auto& f : rows)
            std::cout << f.q << ',' << f.d << ',' << f.r << ',' << f.k << ','
                      << q::walk::render_time(time_of(f)) << ',' << f.condition << "\n";
    } else {
        json out = json::array();
        for (const auto& f : rows)
            out.push_back(json{{"q", f.q},
                               {"d", f.d},
                               {"r", f.r},
                               {"k", f.k},
                               {"time", q::walk::render_time(time_of(f))},
                               {"condition", f.condition}});
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_krawtchouk(int d, int q_arg, const std::string& format) {
    const q::scheme::KrawtchoukTable tab = q::scheme::krawtchouk_table(d, q_arg);
    const q::scheme::RecurrenceReport rec = q::scheme::verify_recurrences(d, q_arg);
    if (format == "csv") {
        for (int s = 0; s <= d; ++s) {
            for (int r = 0; r <= d; ++r) {
                if (r) std::cout << ',';
                std::cout << q::to_string(tab(s, r));
            }
            std::cout << "\n";
        }
        return 0;
    }
    json rows = json::array();
    for (int s = 0; s <= d; ++s) {
        json row = json::array();
        for (int r = 0; r <= d; ++r) row.push_back(q::to_string(tab(s, r)));
        rows.push_back(row);
    }
    const json out{{"d", d},
                   {"q", q_arg},
                   {"table", rows},
                   {"recurrences",
                    {{"contiguous", rec.contiguous},
                     {"dimension", rec.dimension},
                     {"four_term_q2", rec.four_term_q2},
                     {"matrix_form", rec.matrix_form}}}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_characterize(int q_arg, const std::string& gen_file, const std::string& time_s) {
    q::gspec::GraphSpec spec;
    spec.kind = q::gspec::GraphSpec::Kind::quotient;
    spec.q = q_arg;
    spec.path = gen_file;
    const q::zq::Submodule gamma = q::gspec::submodule_for(spec);
    const q::walk::WalkTime tau = q::criteria::canonical_time(q_arg);
    const q::walk::WalkTime t = time_s.empty() ? tau : q::walk::parse_time(time_s);

    json out;
    out["q"] = q_arg;
    out["time"] = q::walk::render_time(t);
    json gens = json::array();
    for (const auto& g : gamma.generators) gens.push_back(q::zq::render_vector(g));
    out["generators"] = gens;

    // Symbolic theorem verdict, only where one applies (rank <= 2 at tau_q).
    out["verdict_symbolic"] = nullptr;
    const bool at_tau =
        t.kind == q::walk::WalkTime::Kind::rational && t.num == tau.num && t.den == tau.den;
    const q::Int size = q::zq::submodule_size(gamma);
    if (at_tau && q::zq::minimum_distance(gamma) >= 3) {
        const auto elems = q::zq::enumerate_submodule(gamma);
        if (size == q_arg) {
            for (const auto& v : elems) {
                if (v == q::zq::zero_vector(q_arg, gamma.d)) continue;
                if (q_arg == 4 &&
                    q::zq::scale(2, v) == q::zq::zero_vector(q_arg, gamma.d))
                    continue;
                out["verdict_symbolic"] = q::criteria::one_generator_verdict(v, q_arg);
                break;
            }
        } else if (q_arg == 3 && size == 9) {
            const auto& a = elems[1];
            for (const auto& b : elems) {
                if (b == q::zq::zero_vector(3, gamma.d) || b == a || b == q::zq::scale(2, a))
                    continue;
                out["verdict_symbolic"] = q::criteria::two_generator_verdict(a, b);
                break;
            }
        }
    }

    try {
        out["verdict_bruteforce"] = q::walk::quotient_mixing_exact(gamma, t).flat;
    } catch (const q::CapExceeded&) {
        out["verdict_bruteforce"] = nullptr;
    } catch (const std::invalid_argument&) {
        out["verdict_bruteforce"] = nullptr;  // e.g. non-rational time
    }

    json cosets = json::array();
    for (const auto& row : q::criteria::coset_condition_report(gamma))
        cosets.push_back(json{{"rep", q::zq::render_vector(row.rep)},
                              {"norm", q::to_string(row.norm)},
                              {"target", q::to_string(row.target)},
                              {"ok", row.ok}});
    out["coset_report"] = cosets;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_star(int n, const std::string& mode, int count) {
    json out;
    out["n"] = n;
    out["mode"] = mode;
    if (mode == "global") {
        const q::stars::StarVerdict v = q::stars::star_verdict(n);
        out["global"] = v.global;
        json times = json::array();
        json oracle = json::array();
        for (const auto& t : v.global_times) {
            times.push_back(q::walk::render_time(t));
            const auto verdict =
                q::walk::is_uniform_mixing_dense(q::stars::star_adjacency(n), t.seconds());
            oracle.push_back(json{{"time", q::walk::render_time(t)},
                                  {"flat", verdict.flat},
                                  {"max_deviation", verdict.max_deviation}});
        }
        out["times"] = times;
        out["oracle"] = oracle;
    } else {
        const std::vector<double> times = q::stars::local_mixing_times(n, count);
        json oracle = json::array();
        for (double t : times)
            oracle.push_back(json{{"time", t}, {"flat", q::stars::mixes_locally_at_cone(n, t)}});
        out["times"] = times;
        out["oracle"] = oracle;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_claw_power(int m, const std::string& time_s, const std::string& format) {
    q::gspec::GraphSpec spec;
    spec.kind = q::gspec::GraphSpec::Kind::claw_power;
    spec.m = m;
    const q::gspec::Report rep = q::gspec::run_check(spec, q::walk::parse_time(time_s));
    if (format == "csv") {
        std::cout << q::gspec::report_csv_header() << "\n"
                  << q::gspec::report_csv_row(rep) << "\n";
    } else {
        std::cout << q::gspec::report_json(rep).dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-time quantum walk uniform-mixing toolkit"};
    app.require_subcommand(1);

    std::string graph, time_s, format = "json", mode = "global", gen_file;
    bool cross = false, known = false, two_gen = false, q1_scan = false;
    int d = 6, q_arg = 0, kmax = 4, samples = 500, jobs = 1, n = 3, m = 2, count = 4;
    unsigned long seed = 0;
    long scan_n = 36;

    CLI::App* c_check = app.add_subcommand("check", "flatness verdict for one graph and time");
    c_check->add_option("--graph", graph, "graph spec, e.g. \"hamming 3 3\"")->required();
    c_check->add_option("--time", time_s, "walk time, e.g. 2pi/9 or real:0.5")->required();
    c_check->add_flag("--cross-check", cross, "also run the dense oracle when feasible");
    c_check->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* c_survey = app.add_subcommand("survey", "batch verdicts over instance families");
    c_survey->add_flag("--known-examples", known, "the catalog of known flat instances");
    c_survey->add_flag("--two-gen", two_gen, "rank-2 verdict-vs-enumerator agreement");
    c_survey->add_flag("--q1-scan", q1_scan, "weight-class counterexample scan");
    c_survey->add_option("--d", d, "ambient dimension");
    c_survey->add_option("--samples", samples, "random instances for d >= 7");
    c_survey->add_option("--seed", seed, "RNG seed");
    c_survey->add_option("--jobs", jobs, "worker threads");
    c_survey->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* c_times = app.add_subcommand("times", "mixing-time gcd and cyclotomic scan");
    c_times->add_option("--graph", graph)->required();
    c_times->add_option("--scan-N", scan_n, "cyclotomic scan bound");
    c_times->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* c_families = app.add_subcommand("families", "faster-mixing distance families");
    c_families->add_option("--q", q_arg)->check(CLI::IsMember({0, 3, 4}));
    c_families->add_option("--kmax", kmax);
    c_families->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* c_kraw = app.add_subcommand("krawtchouk", "polynomial table and recurrences");
    c_kraw->add_option("--d", d)->required();
    c_kraw->add_option("--q", q_arg)->required();
    c_kraw->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* c_char = app.add_subcommand("characterize", "coset analysis of a quotient");
    c_char->add_option("--q", q_arg)->required()->check(CLI::IsMember({2, 3, 4}));
    c_char->add_option("--generators", gen_file, "newline-separated generator file")->required();
    c_char->add_option("--time", time_s, "defaults to the canonical time for q");

    CLI::App* c_star = app.add_subcommand("star", "star graph mixing");
    c_star->add_option("--n", n)->required();
    c_star->add_option("--mode", mode)->check(CLI::IsMember({"global", "local"}));
    c_star->add_option("--count", count, "local times to list");

    CLI::App* c_claw = app.add_subcommand("claw-power", "Cartesian powers of the claw");
    c_claw->add_option("--m", m)->required();
    std::string claw_time = "2pi/sqrt27";
    c_claw->add_option("--time", claw_time);
    c_claw->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_check->parsed()) return cmd_check(graph, time_s, cross, format);
        if (c_survey->parsed())
            return cmd_survey(known, two_gen, q1_scan, d, samples, seed, jobs, format);
        if (c_times->parsed()) return cmd_times(graph, scan_n, format);
        if (c_families->parsed()) return cmd_families(q_arg, kmax, format);
        if (c_kraw->parsed()) return cmd_krawtchouk(d, q_arg, format);
        if (c_char->parsed()) return cmd_characterize(q_arg, gen_file, time_s);
        if (c_star->parsed()) return cmd_star(n, mode, count);
        if (c_claw->parsed()) return cmd_claw_power(m, claw_time, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
