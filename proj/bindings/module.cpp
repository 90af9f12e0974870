// Python surface for the qmix core.  Containers cross the boundary as plain
// dicts and lists; GMP integers and rationals become Python int / Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qmix/cayley.hpp"
#include "qmix/criteria.hpp"
#include "qmix/graphspec.hpp"
#include "qmix/ints.hpp"
#include "qmix/scheme.hpp"
#include "qmix/stars.hpp"
#include "qmix/times.hpp"
#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

namespace py = pybind11;
using namespace qmix;

namespace {

py::int_ to_py(const Int& v) {
    return py::reinterpret_steal<py::int_>(
        PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_py(const Rat& v) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(Int(v.get_num())), to_py(Int(v.get_den())));
}

zq::Submodule submodule_from(int q, const std::vector<std::vector<int>>& gens) {
    if (gens.empty()) throw std::invalid_argument("at least one generator required");
    return zq::make_submodule(q, static_cast<int>(gens.front().size()), gens);
}

py::dict report_dict(const gspec::Report& r) {
    py::dict d;
    d["graph"] = r.graph;
    d["time"] = r.time;
    d["flat"] = r.flat;
    d["max_deviation"] = r.max_deviation;
    d["method"] = r.method;
    d["suspect"] = r.suspect;
    d["witnesses"] = r.witnesses;
    d["wall_ms"] = r.wall_ms;
    if (r.cross_checked) {
        py::dict x;
        x["method"] = r.cross_method;
        x["flat"] = r.cross_flat;
        x["agrees"] = r.cross_agrees;
        x["max_deviation"] = r.cross_deviation;
        d["cross_check"] = x;
    }
    return d;
}

py::dict check(const std::string& graph, const std::string& time, bool cross_check,
               int max_witnesses) {
    const gspec::GraphSpec spec = gspec::parse_graph(graph);
    const walk::WalkTime t = walk::parse_time(time);
    return report_dict(gspec::run_check(spec, t, {cross_check, max_witnesses}));
}

py::list survey_known_examples() {
    py::list out;
    for (const gspec::Report& r : gspec::survey_known_examples(1)) out.append(report_dict(r));
    return out;
}

py::dict survey_two_gen(int d, int samples, unsigned long seed) {
    const gspec::TwoGenSurvey sv = gspec::survey_two_gen(d, samples, seed, 1);
    py::list rows;
    for (const gspec::TwoGenRow& r : sv.rows) {
        py::dict row;
        row["a"] = r.a;
        row["b"] = r.b;
        row["symbolic"] = r.symbolic;
        row["enumerator"] = r.enumerator;
        row["agree"] = r.agree;
        rows.append(row);
    }
    py::dict out;
    out["d"] = sv.d;
    out["instances"] = sv.instances;
    out["agreements"] = sv.agreements;
    out["rows"] = rows;
    return out;
}

bool one_generator_verdict(const std::vector<int>& a, int q) {
    return criteria::one_generator_verdict(zq::make_vector(q, a), q);
}

bool two_generator_verdict(const std::vector<int>& a, const std::vector<int>& b) {
    return criteria::two_generator_verdict(zq::make_vector(3, a), zq::make_vector(3, b));
}

bool coset_condition(int q, const std::vector<std::vector<int>>& gens) {
    return criteria::coset_condition(submodule_from(q, gens), q);
}

py::list coset_condition_report(int q, const std::vector<std::vector<int>>& gens) {
    py::list out;
    for (const criteria::CosetReport& r : criteria::coset_condition_report(submodule_from(q, gens))) {
        py::dict d;
        d["rep"] = zq::render_vector(r.rep);
        d["norm"] = to_py(r.norm);
        d["target"] = to_py(r.target);
        d["ok"] = r.ok;
        out.append(d);
    }
    return out;
}

int minimum_distance(int q, const std::vector<std::vector<int>>& gens) {
    return zq::minimum_distance(submodule_from(q, gens));
}

py::list weight_enumerator(int q, const std::vector<std::vector<int>>& gens) {
    py::list out;
    for (const Int& c : zq::weight_enumerator(submodule_from(q, gens)).counts) out.append(to_py(c));
    return out;
}

py::list krawtchouk(int d, int q) {
    const scheme::KrawtchoukTable tbl = scheme::krawtchouk_table(d, q);
    py::list rows;
    for (int s = 0; s <= d; ++s) {
        py::list row;
        for (int r = 0; r <= d; ++r) row.append(to_py(tbl(s, r)));
        rows.append(row);
    }
    return rows;
}

py::dict mixing_times(const std::string& graph, long scan_bound) {
    const cayley::ConnectionSet cs = gspec::connection_for(gspec::parse_graph(graph));
    const times::MixingTimeReport rep = times::mixing_time_report(cs, scan_bound);
    py::list gcd;
    for (const Int& c : rep.gcd) gcd.append(to_py(c));
    py::list orders;
    for (const auto& [n, mult] : rep.cyclotomic_orders) orders.append(py::make_tuple(n, mult));
    py::list ts;
    for (const walk::WalkTime& t : rep.times) ts.append(walk::render_time(t));
    py::dict out;
    out["gcd_coefficients"] = gcd;
    out["scan_bound"] = rep.scan_bound;
    out["cyclotomic_orders"] = orders;
    out["times"] = ts;
    out["real_roots_z"] = rep.real_roots_z;
    return out;
}

py::object totient_bound(int q, long n) { return to_py(times::totient_bound(q, n)); }

py::dict folded_verdict(int q, int d) {
    const times::FoldedVerdict v = times::folded_verdict(q, d);
    py::list reps;
    for (const walk::WalkTime& t : v.representatives) reps.append(walk::render_time(t));
    py::dict out;
    out["q"] = v.q;
    out["d"] = v.d;
    out["admissible"] = v.admissible;
    out["family"] = v.family;
    out["representatives"] = reps;
    return out;
}

py::list families(int k_max, int q) {
    py::list out;
    for (const scheme::FamilyInstance& f : scheme::enumerate_families(k_max, q)) {
        py::dict d;
        d["q"] = f.q;
        d["d"] = f.d;
        d["r"] = f.r;
        d["k"] = f.k;
        d["condition"] = f.condition;
        out.append(d);
    }
    return out;
}

py::dict star_verdict(int n) {
    const stars::StarVerdict v = stars::star_verdict(n);
    py::list ts;
    for (const walk::WalkTime& t : v.global_times) ts.append(walk::render_time(t));
    py::dict out;
    out["n"] = v.n;
    out["local"] = v.local;
    out["global"] = v.global;
    out["global_times"] = ts;
    return out;
}

std::vector<double> local_mixing_times(int n, int count) {
    return stars::local_mixing_times(n, count);
}

py::dict claw_power(int m) {
    const stars::ClawPowerResult r = stars::claw_power_check(m);
    py::dict out;
    out["m"] = r.m;
    out["vertices"] = r.vertices;
    out["time"] = walk::render_time(r.time);
    out["flat"] = r.verdict.flat;
    out["max_deviation"] = r.verdict.max_deviation;
    out["method"] = r.verdict.method;
    return out;
}

std::string canonical_time(int q) { return walk::render_time(criteria::canonical_time(q)); }

std::vector<std::vector<int>> binary_qr_code_17() {
    std::vector<std::vector<int>> gens;
    for (const zq::ZqVector& g : criteria::binary_qr_code_17().generators) gens.push_back(g.coords);
    return gens;
}

}  // namespace

PYBIND11_MODULE(_qmix, m) {
    m.doc() = "Uniform mixing of continuous quantum walks on Cayley graphs over Z_q^d";
    m.attr("__version__") = "0.1.0";

    m.def("check", &check, py::arg("graph"), py::arg("time"), py::arg("cross_check") = false,
          py::arg("max_witnesses") = 4,
          "Flatness verdict for a graph DSL string at a time string; returns a report dict.");
    m.def("survey_known_examples", &survey_known_examples,
          "Verdicts for the known uniform-mixing catalog.");
    m.def("survey_two_gen", &survey_two_gen, py::arg("d"), py::arg("samples") = 0,
          py::arg("seed") = 0,
          "Rank-2 quotient survey over Z_3^d: symbolic rule vs exact coset enumeration.");
    m.def("one_generator_verdict", &one_generator_verdict, py::arg("a"), py::arg("q"),
          "Uniform mixing of H(d,q)/<a> at the canonical time, by the unit-count rule.");
    m.def("two_generator_verdict", &two_generator_verdict, py::arg("a"), py::arg("b"),
          "Uniform mixing of H(d,3)/<a,b> at 2pi/9, by the weight/inner-product rule.");
    m.def("coset_condition", &coset_condition, py::arg("q"), py::arg("gens"),
          "Exact coset weight-sum condition for uniform mixing of the quotient.");
    m.def("coset_condition_report", &coset_condition_report, py::arg("q"), py::arg("gens"),
          "Per-coset norms and targets behind coset_condition.");
    m.def("minimum_distance", &minimum_distance, py::arg("q"), py::arg("gens"));
    m.def("weight_enumerator", &weight_enumerator, py::arg("q"), py::arg("gens"),
          "Counts by Hamming weight, index 0..d.");
    m.def("krawtchouk", &krawtchouk, py::arg("d"), py::arg("q"),
          "Table p_r(s) as rows indexed by s, columns by r.");
    m.def("mixing_times", &mixing_times, py::arg("graph"), py::arg("scan_bound") = 36,
          "Cyclotomic scan of the F_g gcd: admissible orders and times.");
    m.def("totient_bound", &totient_bound, py::arg("q"), py::arg("n"),
          "Valency lower bound (q-1)/2*(phi(n)+q-1) for mixing at 2pi/(qn), as a Fraction.");
    m.def("folded_verdict", &folded_verdict, py::arg("q"), py::arg("d"),
          "Admissible mixing-time family of the folded Hamming graph H(d,q)/<1>.");
    m.def("families", &families, py::arg("k_max"), py::arg("q"),
          "Distance-graph family instances with their congruence condition.");
    m.def("star_verdict", &star_verdict, py::arg("n"),
          "Local and global mixing verdict for the star K_{1,n}.");
    m.def("local_mixing_times", &local_mixing_times, py::arg("n"), py::arg("count") = 3,
          "First cone-local mixing times of K_{1,n}.");
    m.def("claw_power", &claw_power, py::arg("m"),
          "Dense verdict for K_{1,3}^m at 2pi/sqrt(27).");
    m.def("canonical_time", &canonical_time, py::arg("q"),
          "The canonical uniform-mixing time string for H(d,q).");
    m.def("binary_qr_code_17", &binary_qr_code_17,
          "Generator rows of the binary [17,9,5] quadratic-residue code.");
}
