#include "qmix/graphspec.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "qmix/config.hpp"
#include "qmix/criteria.hpp"
#include "qmix/cyclotomic.hpp"
#include "qmix/scheme.hpp"
#include "qmix/stars.hpp"

namespace qmix::gspec {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("graph spec: bad integer for ") + what + ": '" +
                                    tok + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<int> parse_one_generator(const std::string& item) {
    std::vector<int> v;
    if (item.find(',') != std::string::npos) {
        for (const std::string& part : split_on(item, ','))
            v.push_back(parse_int(trim(part), "generator coordinate"));
    } else if (all_digits(item)) {
        for (char c : item) v.push_back(c - '0');
    } else {
        throw std::invalid_argument("graph spec: bad generator '" + item + "'");
    }
    return v;
}

/// gens=<payload>: generators separated by ';'.  Each generator is either
/// comma-separated residues or a compact digit string.  Without a ';', a
/// comma list whose tokens all have several digits is read as multiple
/// compact generators ("gens=110,011"), otherwise as one vector.
std::vector<std::vector<int>> parse_gens_payload(const std::string& payload) {
    std::vector<std::vector<int>> gens;
    if (payload.find(';') != std::string::npos) {
        for (const std::string& item : split_on(payload, ';')) {
            const std::string t = trim(item);
            if (!t.empty()) gens.push_back(parse_one_generator(t));
        }
    } else if (payload.find(',') != std::string::npos) {
        const std::vector<std::string> toks = split_on(payload, ',');
        const bool compact = std::all_of(toks.begin(), toks.end(), [](const std::string& t) {
            return all_digits(trim(t)) && trim(t).size() > 1;
        });
        if (compact) {
            for (const std::string& t : toks) gens.push_back(parse_one_generator(trim(t)));
        } else {
            gens.push_back(parse_one_generator(trim(payload)));
        }
    } else {
        gens.push_back(parse_one_generator(trim(payload)));
    }
    if (gens.empty()) throw std::invalid_argument("graph spec: empty generator list");
    for (const auto& g : gens)
        if (g.size() != gens.front().size())
            throw std::invalid_argument("graph spec: generators of unequal length");
    return gens;
}

/// Splits "a,b" at the top-level comma (parentheses balanced).
std::pair<std::string, std::string> split_top_comma(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw std::invalid_argument("graph spec: cartesian needs two comma-separated parts");
}

Int vertex_count_int(const GraphSpec& s) {
    switch (s.kind) {
        case GraphSpec::Kind::hamming:
        case GraphSpec::Kind::distance:
            return int_pow(Int(s.q), static_cast<unsigned long>(s.d));
        case GraphSpec::Kind::union3:
            return int_pow(Int(3), static_cast<unsigned long>(2 * s.k + 1));
        case GraphSpec::Kind::star:
            return Int(s.n + 1);
        case GraphSpec::Kind::claw_power:
            return int_pow(Int(4), static_cast<unsigned long>(s.m));
        case GraphSpec::Kind::quotient: {
            const zq::Submodule gamma = submodule_for(s);
            return int_pow(Int(gamma.q), static_cast<unsigned long>(gamma.d)) /
                   zq::submodule_size(gamma);
        }
        case GraphSpec::Kind::cayley_file: {
            const cayley::ConnectionSet c = connection_for(s);
            return int_pow(Int(c.q), static_cast<unsigned long>(c.d));
        }
        case GraphSpec::Kind::cartesian:
            return vertex_count_int(s.parts[0]) * vertex_count_int(s.parts[1]);
    }
    throw std::logic_error("unreachable");
}

scheme::SchemeGraphSpec scheme_spec_for(const GraphSpec& s) {
    switch (s.kind) {
        case GraphSpec::Kind::hamming:
            return scheme::SchemeGraphSpec{s.d, s.q, {1}};
        case GraphSpec::Kind::distance:
            return scheme::SchemeGraphSpec{s.d, s.q, {s.r}};
        case GraphSpec::Kind::union3:
            return scheme::union_class_graph(s.k, s.i).spec;
        default:
            throw std::invalid_argument("not a distance-class graph");
    }
}

long ring_order_of(const walk::WalkTime& t, int q) {
    if (t.kind != walk::WalkTime::Kind::rational || !t.den.fits_slong_p()) return -1;
    return std::lcm(t.den.get_si(), static_cast<long>(q));
}

bool exact_ring_feasible(const walk::WalkTime& t, int q) {
    const long n = ring_order_of(t, q);
    return n > 0 && n <= 4096;
}

void run_parallel(long count, int jobs, const std::function<void(long)>& fn) {
    jobs = std::max(1, jobs);
    if (count < 2 || jobs == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    jobs = static_cast<int>(std::min<long>(jobs, count));
    std::atomic<long> next{0};
    std::mutex mu;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (first_error) return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

}  // namespace

GraphSpec parse_graph(const std::string& text) {
    const std::string s = trim(text);
    if (s.rfind("cartesian(", 0) == 0) {
        if (s.back() != ')') throw std::invalid_argument("graph spec: unbalanced cartesian()");
        const std::string inner = s.substr(10, s.size() - 11);
        const auto [left, right] = split_top_comma(inner);
        GraphSpec g;
        g.kind = GraphSpec::Kind::cartesian;
        g.parts.push_back(parse_graph(left));
        g.parts.push_back(parse_graph(right));
        return g;
    }
    const std::vector<std::string> tok = split_ws(s);
    if (tok.empty()) throw std::invalid_argument("graph spec: empty");
    GraphSpec g;
    const std::string& head = tok[0];
    if (head == "hamming") {
        if (tok.size() != 3) throw std::invalid_argument("graph spec: hamming <d> <q>");
        g.kind = GraphSpec::Kind::hamming;
        g.d = parse_int(tok[1], "d");
        g.q = parse_int(tok[2], "q");
    } else if (head == "distance") {
        if (tok.size() != 4) throw std::invalid_argument("graph spec: distance <d> <q> <r>");
        g.kind = GraphSpec::Kind::distance;
        g.d = parse_int(tok[1], "d");
        g.q = parse_int(tok[2], "q");
        g.r = parse_int(tok[3], "r");
    } else if (head == "union3") {
        if (tok.size() != 3) throw std::invalid_argument("graph spec: union3 <k> <i>");
        g.kind = GraphSpec::Kind::union3;
        g.k = parse_int(tok[1], "k");
        g.i = parse_int(tok[2], "i");
        g.q = 3;
        g.d = 2 * g.k + 1;
    } else if (head == "star") {
        if (tok.size() != 2) throw std::invalid_argument("graph spec: star <n>");
        g.kind = GraphSpec::Kind::star;
        g.n = parse_int(tok[1], "n");
    } else if (head == "claw-power") {
        if (tok.size() != 2) throw std::invalid_argument("graph spec: claw-power <m>");
        g.kind = GraphSpec::Kind::claw_power;
        g.m = parse_int(tok[1], "m");
    } else if (head == "quotient") {
        if (tok.size() < 3 || tok[1].size() < 2 || tok[1][0] != 'q' ||
            !all_digits(tok[1].substr(1)))
            throw std::invalid_argument(
                "graph spec: quotient q<q> gens=<...> or quotient q<q> <file>");
        g.kind = GraphSpec::Kind::quotient;
        g.q = parse_int(tok[1].substr(1), "q");
        const std::size_t rest_pos = s.find(tok[1]) + tok[1].size();
        const std::string rest = trim(s.substr(rest_pos));
        if (rest.rfind("gens=", 0) == 0) {
            g.gens = parse_gens_payload(rest.substr(5));
            g.d = static_cast<int>(g.gens.front().size());
        } else {
            g.path = rest;
        }
    } else if (head == "cayley") {
        if (tok.size() < 2) throw std::invalid_argument("graph spec: cayley <file.json>");
        g.kind = GraphSpec::Kind::cayley_file;
        g.path = trim(s.substr(s.find(tok[0]) + tok[0].size()));
    } else {
        throw std::invalid_argument("graph spec: unknown constructor '" + head + "'");
    }
    return g;
}

std::string render_graph(const GraphSpec& s) {
    std::ostringstream out;
    switch (s.kind) {
        case GraphSpec::Kind::hamming:
            out << "hamming " << s.d << " " << s.q;
            break;
        case GraphSpec::Kind::distance:
            out << "distance " << s.d << " " << s.q << " " << s.r;
            break;
        case GraphSpec::Kind::union3:
            out << "union3 " << s.k << " " << s.i;
            break;
        case GraphSpec::Kind::star:
            out << "star " << s.n;
            break;
        case GraphSpec::Kind::claw_power:
            out << "claw-power " << s.m;
            break;
        case GraphSpec::Kind::quotient:
            out << "quotient q" << s.q << " ";
            if (!s.gens.empty()) {
                out << "gens=";
                for (std::size_t i = 0; i < s.gens.size(); ++i) {
                    if (i) out << ";";
                    out << zq::render_vector(zq::make_vector(s.q, s.gens[i]));
                }
            } else {
                out << s.path;
            }
            break;
        case GraphSpec::Kind::cayley_file:
            out << "cayley " << s.path;
            break;
        case GraphSpec::Kind::cartesian:
            out << "cartesian(" << render_graph(s.parts[0]) << "," << render_graph(s.parts[1])
                << ")";
            break;
    }
    return out.str();
}

zq::Submodule submodule_for(const GraphSpec& s) {
    if (s.kind != GraphSpec::Kind::quotient)
        throw std::invalid_argument("graph spec: only quotient specs carry a submodule");
    if (!s.gens.empty()) return zq::make_submodule(s.q, s.d, s.gens);
    return zq::parse_generator_lines(s.q, read_file(s.path));
}

cayley::ConnectionSet connection_for(const GraphSpec& s) {
    switch (s.kind) {
        case GraphSpec::Kind::hamming:
            return cayley::hamming_connection_set(s.d, s.q);
        case GraphSpec::Kind::distance:
            return cayley::distance_connection_set(s.d, s.q, s.r);
        case GraphSpec::Kind::union3: {
            const scheme::UnionClassGraph u = scheme::union_class_graph(s.k, s.i);
            return cayley::union_connection_set(u.spec.d, 3, u.spec.classes);
        }
        case GraphSpec::Kind::quotient:
            return cayley::quotient_connection_set(submodule_for(s));
        case GraphSpec::Kind::cayley_file:
            return cayley::connection_set_from_json(read_file(s.path));
        default:
            throw std::invalid_argument(
                "graph spec: not a Cayley graph over Z_q^d: " + render_graph(s));
    }
}

Eigen::MatrixXd adjacency_for(const GraphSpec& s) {
    if (vertex_count_int(s) > Int(caps().dense))
        throw CapExceeded("graph too large for a dense adjacency matrix");
    switch (s.kind) {
        case GraphSpec::Kind::star:
            return stars::star_adjacency(s.n);
        case GraphSpec::Kind::claw_power: {
            Eigen::MatrixXd a = stars::star_adjacency(3);
            for (int i = 1; i < s.m; ++i) a = walk::cartesian_product(a, stars::star_adjacency(3));
            return a;
        }
        case GraphSpec::Kind::cartesian:
            return walk::cartesian_product(adjacency_for(s.parts[0]), adjacency_for(s.parts[1]));
        default:
            return walk::adjacency_matrix(connection_for(s));
    }
}

namespace {

void check_star(const GraphSpec& s, const walk::WalkTime& t, Report& rep, int max_witnesses) {
    const stars::StarBlocks b = stars::star_transition(s.n, t.seconds());
    const double nv = s.n + 1;
    struct Entry {
        const char* label;
        std::complex<double> value;
    };
    std::vector<Entry> entries{{"corner", b.corner},
                               {"cone-leaf", b.cone_leaf},
                               {"leaf-diagonal", b.leaf_same}};
    if (s.n >= 2) entries.push_back({"leaf-offdiagonal", b.leaf_other});
    double dev = 0;
    for (const Entry& e : entries) dev = std::max(dev, std::abs(std::norm(e.value) * nv - 1.0));
    const walk::MixingVerdict v = walk::verdict_from_deviation(dev, "closed-form");
    rep.flat = v.flat;
    rep.max_deviation = v.max_deviation;
    rep.suspect = v.suspect;
    rep.method = v.method;
    if (!rep.flat) {
        for (const Entry& e : entries) {
            if (static_cast<int>(rep.witnesses.size()) >= max_witnesses) break;
            const double d2 = std::abs(std::norm(e.value) * nv - 1.0);
            if (d2 > 1e-9)
                rep.witnesses.push_back(std::string(e.label) +
                                        ": n*|U|^2 - 1 = " + format_double(d2));
        }
    }
}

void check_scheme(const GraphSpec& s, const walk::WalkTime& t, Report& rep, int max_witnesses) {
    const scheme::SchemeGraphSpec spec = scheme_spec_for(s);
    const std::vector<Int> theta = scheme::scheme_eigenvalues(spec);
    if (t.kind == walk::WalkTime::Kind::rational && exact_ring_feasible(t, spec.q)) {
        rep.method = "scheme-class";
        const std::vector<cyc::CycInt> zs =
            walk::scheme_transition_class(spec.d, spec.q, theta, t);
        const Int target = int_pow(Int(spec.q), static_cast<unsigned long>(spec.d));
        const cyc::CycInt flat_norm = cyc::CycInt::integer(zs.front().context(), target);
        const double n = std::pow(double(spec.q), spec.d);
        rep.flat = true;
        double dev = 0;
        for (int w = 0; w < static_cast<int>(zs.size()); ++w) {
            if (zs[w] * zs[w].conjugate() == flat_norm) continue;
            rep.flat = false;
            const double d2 = std::abs(std::norm(zs[w].to_complex()) / (n * n) * n - 1.0);
            dev = std::max(dev, d2);
            if (static_cast<int>(rep.witnesses.size()) < max_witnesses)
                rep.witnesses.push_back("weight class w=" + std::to_string(w) +
                                        ": n*|U|^2 - 1 = " + format_double(d2));
        }
        rep.max_deviation = rep.flat ? 0.0 : dev;
        return;
    }
    const cayley::ConnectionSet c = connection_for(s);
    if (vertex_count_int(s) > Int(caps().enumeration))
        throw CapExceeded("graph too large for the float character sum");
    const std::vector<std::complex<double>> row = walk::transition_row(c, t.seconds());
    const double n = double(row.size());
    double dev = 0;
    std::uint64_t worst = 0;
    for (std::uint64_t g = 0; g < row.size(); ++g) {
        const double d2 = std::abs(std::norm(row[g]) * n - 1.0);
        if (d2 > dev) {
            dev = d2;
            worst = g;
        }
    }
    const walk::MixingVerdict v = walk::verdict_from_deviation(dev, "character-sum-float");
    rep.flat = v.flat;
    rep.max_deviation = v.max_deviation;
    rep.suspect = v.suspect;
    rep.method = v.method;
    if (!rep.flat && max_witnesses > 0)
        rep.witnesses.push_back("vertex " + zq::render_vector(zq::decode(c.q, c.d, worst)) +
                                ": n*|U|^2 - 1 = " + format_double(dev));
}

/// Basis extraction for the symbolic theorems; empty when not applicable.
std::vector<zq::ZqVector> symbolic_basis(const zq::Submodule& gamma,
                                         const std::vector<zq::ZqVector>& elems) {
    const int q = gamma.q;
    const std::size_t size = elems.size();
    if (size == static_cast<std::size_t>(q)) {
        // cyclic of order q: any element of full order generates
        for (const zq::ZqVector& v : elems) {
            if (v == zq::zero_vector(q, gamma.d)) continue;
            if (q == 4 && zq::scale(2, v) == zq::zero_vector(q, gamma.d)) continue;
            return {v};
        }
        return {};
    }
    if (q == 3 && size == 9) {
        const zq::ZqVector& a = elems[0] == zq::zero_vector(3, gamma.d) ? elems[1] : elems[0];
        for (const zq::ZqVector& b : elems) {
            if (b == zq::zero_vector(3, gamma.d) || b == a || b == zq::scale(2, a)) continue;
            return {a, b};
        }
    }
    return {};
}

void check_quotient(const GraphSpec& s, const walk::WalkTime& t, Report& rep,
                    const CheckOptions& opt) {
    const zq::Submodule gamma = submodule_for(s);
    const std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
    const walk::WalkTime tau = criteria::canonical_time(gamma.q);
    const bool at_tau = t.kind == walk::WalkTime::Kind::rational && t.num == tau.num &&
                        t.den == tau.den;
    if (at_tau && zq::minimum_distance(gamma) >= 3) {
        const std::vector<zq::ZqVector> basis = symbolic_basis(gamma, elems);
        if (basis.size() == 1) {
            rep.method = "symbolic-criterion";
            rep.flat = criteria::one_generator_verdict(basis[0], gamma.q);
            if (!rep.flat)
                rep.witnesses.push_back("generator weight " +
                                        std::to_string(zq::hamming_weight(basis[0])) +
                                        " fails the single-generator parity condition");
            return;
        }
        if (basis.size() == 2) {
            rep.method = "symbolic-criterion";
            rep.flat = criteria::two_generator_verdict(basis[0], basis[1]);
            if (!rep.flat)
                rep.witnesses.push_back("weights (" +
                                        std::to_string(zq::hamming_weight(basis[0])) + "," +
                                        std::to_string(zq::hamming_weight(basis[1])) +
                                        ") and inner product " +
                                        std::to_string(zq::inner_product(basis[0], basis[1])) +
                                        " fail both cases of the two-generator condition");
            return;
        }
    }
    if (t.kind == walk::WalkTime::Kind::rational && exact_ring_feasible(t, gamma.q)) {
        rep.method = "quotient-enumerator";
        const Int target =
            int_pow(Int(gamma.q), static_cast<unsigned long>(gamma.d)) * Int(elems.size());
        const double cells = std::pow(double(gamma.q), gamma.d) / double(elems.size());
        const double scale = std::pow(double(gamma.q), 2 * gamma.d);
        rep.flat = true;
        double dev = 0;
        for (const zq::ZqVector& repv : zq::coset_transversal(gamma)) {
            const cyc::CycInt z = walk::quotient_amplitude_exact(gamma, repv, t);
            if (z * z.conjugate() == cyc::CycInt::integer(z.context(), target)) continue;
            rep.flat = false;
            const double d2 = std::abs(std::norm(z.to_complex()) / scale * cells - 1.0);
            dev = std::max(dev, d2);
            if (static_cast<int>(rep.witnesses.size()) < opt.max_witnesses)
                rep.witnesses.push_back("coset " + zq::render_vector(repv) +
                                        ": n*|U|^2 - 1 = " + format_double(d2));
        }
        rep.max_deviation = rep.flat ? 0.0 : dev;
        return;
    }
    const double cells = std::pow(double(gamma.q), gamma.d) / double(elems.size());
    // quotient_amplitude returns q^d U: rescale |.|^2 by q^(2d).
    const double scale = std::pow(double(gamma.q), 2 * gamma.d);
    double dev = 0;
    zq::ZqVector worst = zq::zero_vector(gamma.q, gamma.d);
    for (const zq::ZqVector& repv : zq::coset_transversal(gamma)) {
        const std::complex<double> u = walk::quotient_amplitude(gamma, repv, t.seconds());
        const double d2 = std::abs(std::norm(u) / scale * cells - 1.0);
        if (d2 > dev) {
            dev = d2;
            worst = repv;
        }
    }
    const walk::MixingVerdict v = walk::verdict_from_deviation(dev, "quotient-enumerator-float");
    rep.flat = v.flat;
    rep.max_deviation = v.max_deviation;
    rep.suspect = v.suspect;
    rep.method = v.method;
    if (!rep.flat && opt.max_witnesses > 0)
        rep.witnesses.push_back("coset " + zq::render_vector(worst) +
                                ": n*|U|^2 - 1 = " + format_double(dev));
}

}  // namespace

Report run_check(const GraphSpec& s, const walk::WalkTime& t, const CheckOptions& opt) {
    Report rep;
    rep.graph = render_graph(s);
    rep.time = walk::render_time(t);
    const auto start = std::chrono::steady_clock::now();
    bool ran_dense = false;
    switch (s.kind) {
        case GraphSpec::Kind::star:
            check_star(s, t, rep, opt.max_witnesses);
            break;
        case GraphSpec::Kind::claw_power:
        case GraphSpec::Kind::cartesian: {
            const walk::MixingVerdict v =
                walk::is_uniform_mixing_dense(adjacency_for(s), t.seconds());
            rep.flat = v.flat;
            rep.max_deviation = v.max_deviation;
            rep.suspect = v.suspect;
            rep.method = "dense-oracle";
            ran_dense = true;
            break;
        }
        case GraphSpec::Kind::hamming:
        case GraphSpec::Kind::distance:
        case GraphSpec::Kind::union3:
            check_scheme(s, t, rep, opt.max_witnesses);
            break;
        case GraphSpec::Kind::quotient:
            check_quotient(s, t, rep, opt);
            break;
        case GraphSpec::Kind::cayley_file: {
            const cayley::ConnectionSet c = connection_for(s);
            const walk::MixingVerdict v = walk::is_uniform_mixing(c, t);
            rep.flat = v.flat;
            rep.max_deviation = v.max_deviation;
            rep.suspect = v.suspect;
            rep.method = v.method;
            break;
        }
    }
    if (opt.cross_check && !ran_dense) {
        try {
            const walk::MixingVerdict v =
                walk::is_uniform_mixing_dense(adjacency_for(s), t.seconds());
            rep.cross_checked = true;
            rep.cross_method = "dense-oracle";
            rep.cross_flat = v.flat;
            rep.cross_deviation = v.max_deviation;
            rep.cross_agrees = v.flat == rep.flat;
        } catch (const CapExceeded&) {
            // cross-check skipped: graph too large for the oracle
        } catch (const std::invalid_argument&) {
            // no dense view of this spec (e.g. non-simple quotient)
        }
    }
    const auto stop = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return rep;
}

nlohmann::json report_json(const Report& r) {
    nlohmann::json j{{"graph", r.graph},
                     {"time", r.time},
                     {"flat", r.flat},
                     {"max_deviation", r.max_deviation},
                     {"method", r.method},
                     {"suspect", r.suspect},
                     {"witnesses", r.witnesses},
                     {"wall_ms", r.wall_ms}};
    if (r.cross_checked)
        j["cross_check"] = nlohmann::json{{"method", r.cross_method},
                                          {"flat", r.cross_flat},
                                          {"agrees", r.cross_agrees},
                                          {"max_deviation", r.cross_deviation}};
    return j;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_csv_header() {
    return "graph,time,flat,max_deviation,method,suspect,witnesses,wall_ms,"
           "cross_method,cross_flat,cross_agrees";
}

std::string report_csv_row(const Report& r) {
    std::ostringstream out;
    std::string wit;
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        if (i) wit += " | ";
        wit += r.witnesses[i];
    }
    out << csv_quote(r.graph) << ',' << csv_quote(r.time) << ',' << (r.flat ? "true" : "false")
        << ',' << format_double(r.max_deviation) << ',' << r.method << ','
        << (r.suspect ? "true" : "false") << ',' << csv_quote(wit) << ',' << r.wall_ms << ',';
    if (r.cross_checked)
        out << r.cross_method << ',' << (r.cross_flat ? "true" : "false") << ','
            << (r.cross_agrees ? "true" : "false");
    else
        out << ",,";
    return out.str();
}

std::vector<Report> survey_known_examples(int jobs) {
    std::vector<std::pair<std::string, std::string>> instances;
    instances.emplace_back("hamming 1 2", "pi/4");   // K_2
    instances.emplace_back("hamming 1 3", "2pi/9");  // K_3
    instances.emplace_back("hamming 1 4", "pi/4");   // K_4
    for (int d = 2; d <= 8; ++d)
        instances.emplace_back("hamming " + std::to_string(d) + " 2", "pi/4");
    for (int d = 2; d <= 5; ++d)
        instances.emplace_back("hamming " + std::to_string(d) + " 3", "2pi/9");
    for (int d = 2; d <= 4; ++d)
        instances.emplace_back("hamming " + std::to_string(d) + " 4", "pi/4");
    std::vector<Report> out(instances.size());
    run_parallel(static_cast<long>(instances.size()), jobs, [&](long i) {
        const auto& [g, t] = instances[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = run_check(parse_graph(g), walk::parse_time(t));
    });
    return out;
}

namespace {

struct GenPair {
    zq::ZqVector a;
    zq::ZqVector b;
};

bool rank2_min3(const zq::ZqVector& a, const zq::ZqVector& b) {
    const std::uint64_t ac = zq::encode(a);
    const std::uint64_t bc = zq::encode(b);
    if (ac == 0 || bc == 0) return false;
    if (bc == ac || bc == zq::encode(zq::scale(2, a))) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == 0 && j == 0) continue;
            if (zq::hamming_weight(zq::add(zq::scale(i, a), zq::scale(j, b))) < 3) return false;
        }
    return true;
}

/// All rank-2 submodules of Z_3^d with minimum distance >= 3, one generator
/// pair per submodule (deduplicated by element set).
std::vector<GenPair> exhaustive_rank2(int d) {
    const std::uint64_t n = static_cast<std::uint64_t>(int_pow(Int(3), d).get_ui());
    std::unordered_set<std::string> seen;
    std::vector<GenPair> out;
    for (std::uint64_t ac = 1; ac < n; ++ac) {
        const zq::ZqVector a = zq::decode(3, d, ac);
        if (zq::hamming_weight(a) < 3) continue;
        for (std::uint64_t bc = ac + 1; bc < n; ++bc) {
            const zq::ZqVector b = zq::decode(3, d, bc);
            if (!rank2_min3(a, b)) continue;
            std::array<std::uint64_t, 9> key{};
            int pos = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    key[static_cast<std::size_t>(pos++)] =
                        zq::encode(zq::add(zq::scale(i, a), zq::scale(j, b)));
            std::sort(key.begin(), key.end());
            std::string skey(reinterpret_cast<const char*>(key.data()), sizeof key);
            if (seen.insert(std::move(skey)).second) out.push_back({a, b});
        }
    }
    return out;
}

std::vector<GenPair> sampled_rank2(int d, int samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, 2);
    std::vector<GenPair> out;
    while (static_cast<int>(out.size()) < samples) {
        std::vector<int> ac(static_cast<std::size_t>(d)), bc(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) ac[static_cast<std::size_t>(i)] = coord(rng);
        for (int i = 0; i < d; ++i) bc[static_cast<std::size_t>(i)] = coord(rng);
        const zq::ZqVector a = zq::make_vector(3, ac);
        const zq::ZqVector b = zq::make_vector(3, bc);
        if (!rank2_min3(a, b)) continue;
        out.push_back({a, b});
    }
    return out;
}

}  // namespace

TwoGenSurvey survey_two_gen(int d, int samples, unsigned long seed, int jobs) {
    if (d < 3) throw std::invalid_argument("survey_two_gen: need d >= 3");
    TwoGenSurvey sv;
    sv.d = d;
    const std::vector<GenPair> pairs =
        d <= 6 ? exhaustive_rank2(d) : sampled_rank2(d, samples, seed);
    sv.rows.resize(pairs.size());
    const walk::WalkTime tau = walk::rational_time(1, 9);
    run_parallel(static_cast<long>(pairs.size()), jobs, [&](long idx) {
        const GenPair& p = pairs[static_cast<std::size_t>(idx)];
        TwoGenRow row;
        row.a = zq::render_vector(p.a);
        row.b = zq::render_vector(p.b);
        row.symbolic = criteria::two_generator_verdict(p.a, p.b);
        const zq::Submodule gamma = zq::make_submodule(3, d, {p.a.coords, p.b.coords});
        row.enumerator = walk::quotient_mixing_exact(gamma, tau).flat;
        row.agree = row.symbolic == row.enumerator;
        sv.rows[static_cast<std::size_t>(idx)] = std::move(row);
    });
    sv.instances = static_cast<long>(sv.rows.size());
    for (const TwoGenRow& r : sv.rows)
        if (r.agree) ++sv.agreements;
    return sv;
}

Q1Survey survey_q1_scan(int d, int samples, unsigned long seed, int jobs) {
    if (d < 3) throw std::invalid_argument("survey_q1_scan: need d >= 3");
    Q1Survey sv;
    sv.d = d;
    sv.samples = samples;
    sv.seed = seed;
    const std::vector<GenPair> pairs = sampled_rank2(d, samples, seed);
    sv.rows.resize(pairs.size());
    run_parallel(static_cast<long>(pairs.size()), jobs, [&](long idx) {
        const GenPair& p = pairs[static_cast<std::size_t>(idx)];
        const zq::Submodule gamma = zq::make_submodule(3, d, {p.a.coords, p.b.coords});
        const std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
        Q1Row row;
        row.gens = zq::render_vector(p.a) + ";" + zq::render_vector(p.b);
        row.triple_on_gamma =
            criteria::coset_triple_condition(zq::weight_class_triple(zq::weight_enumerator(gamma)), 2);
        row.triple_on_all_cosets = true;
        for (const zq::ZqVector& repv : zq::coset_transversal(gamma)) {
            const zq::WeightEnumerator w = zq::coset_weight_enumerator(elems, repv);
            if (!criteria::coset_triple_condition(zq::weight_class_triple(w), 2)) {
                row.triple_on_all_cosets = false;
                break;
            }
        }
        sv.rows[static_cast<std::size_t>(idx)] = std::move(row);
    });
    for (const Q1Row& r : sv.rows)
        if (r.triple_on_gamma != r.triple_on_all_cosets) ++sv.counterexamples;
    return sv;
}

}  // namespace qmix::gspec
