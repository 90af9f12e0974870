#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmix/cayley.hpp"
#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

namespace qmix::gspec {

/// Graph construction DSL.  Canonical forms:
///   hamming <d> <q>
///   distance <d> <q> <r>
///   union3 <k> <i>
///   star <n>
///   claw-power <m>
///   quotient q<q> gens=<v1>;<v2>;...      (each vector comma-separated)
///   quotient q<q> <file>                  (newline-separated vectors)
///   cayley <file.json>
///   cartesian(<spec>,<spec>)
struct GraphSpec {
    enum class Kind { hamming, distance, union3, star, claw_power, quotient, cayley_file, cartesian };
    Kind kind = Kind::hamming;
    int d = 1;
    int q = 2;
    int r = 1;
    int k = 2;
    int i = 0;
    int n = 1;
    int m = 1;
    std::vector<std::vector<int>> gens;  // inline quotient generators
    std::string path;                    // quotient/cayley file
    std::vector<GraphSpec> parts;        // cartesian factors
};

GraphSpec parse_graph(const std::string& text);
std::string render_graph(const GraphSpec& s);

/// Materializations.  Not every spec supports every view; unsupported
/// combinations throw std::invalid_argument.
zq::Submodule submodule_for(const GraphSpec& s);         // quotient only
cayley::ConnectionSet connection_for(const GraphSpec& s);  // linear-group specs
Eigen::MatrixXd adjacency_for(const GraphSpec& s);       // any (dense cap)

struct Report {
    std::string graph;
    std::string time;
    bool flat = false;
    double max_deviation = 0.0;
    std::string method;
    bool suspect = false;
    std::vector<std::string> witnesses;  // offending entries when not flat
    double wall_ms = 0.0;
    bool cross_checked = false;
    std::string cross_method;
    bool cross_flat = false;
    bool cross_agrees = true;
    double cross_deviation = 0.0;
};

struct CheckOptions {
    bool cross_check = false;
    int max_witnesses = 4;
};

/// Dispatches to the cheapest applicable method: closed-form (stars),
/// symbolic criterion (rank <= 2 quotients at the canonical time),
/// scheme-class (distance-regular unions), exact character sum, then the
/// dense oracle.  --cross-check forces an oracle comparison when feasible.
Report run_check(const GraphSpec& s, const walk::WalkTime& t, const CheckOptions& opt = {});

nlohmann::json report_json(const Report& r);
std::string report_csv_header();
std::string report_csv_row(const Report& r);

/// Survey drivers.  All are deterministic for a fixed seed; `jobs` only
/// changes wall time, never content or order.
std::vector<Report> survey_known_examples(int jobs);

struct TwoGenRow {
    std::string a;
    std::string b;
    bool symbolic = false;
    bool enumerator = false;
    bool agree = false;
};

struct TwoGenSurvey {
    int d = 0;
    long instances = 0;
    long agreements = 0;
    std::vector<TwoGenRow> rows;
};

/// Exhaustive over rank-2 submodules with minimum distance >= 3 for d <= 6;
/// `samples` seeded random instances for d >= 7.
TwoGenSurvey survey_two_gen(int d, int samples, unsigned long seed, int jobs);

struct Q1Row {
    std::string gens;
    bool triple_on_gamma = false;
    bool triple_on_all_cosets = false;
};

struct Q1Survey {
    int d = 0;
    int samples = 0;
    unsigned long seed = 0;
    long counterexamples = 0;  // instances where the two columns disagree
    std::vector<Q1Row> rows;
};

/// Scans random rank-2 instances for a counterexample to "the weight-class
/// identity on the subgroup alone decides every coset".  Reported, never
/// asserted.
Q1Survey survey_q1_scan(int d, int samples, unsigned long seed, int jobs);

}  // namespace qmix::gspec
