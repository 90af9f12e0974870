#include "qmix/zq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "qmix/config.hpp"

namespace qmix {

Caps& caps() {
    static Caps c = [] {
        Caps init;
        if (const char* env = std::getenv("QMIX_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) init.enumeration = v;
        }
        return init;
    }();
    return c;
}

}  // namespace qmix

namespace qmix::zq {

namespace {

void check_q(int q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0) return false;
    return true;
}

void check_module_q(int q) {
    if (!is_prime(q) && q != 4)
        throw std::invalid_argument("submodule arithmetic requires prime q or q = 4");
}

// Multiplicative inverse of a unit mod q.
int unit_inverse(int a, int q) {
    a = mod_floor(a, q);
    for (int x = 1; x < q; ++x)
        if (a * x % q == 1) return x;
    throw std::invalid_argument("not a unit mod q");
}

}  // namespace

ZqVector make_vector(int q, std::vector<int> coords) {
    check_q(q);
    if (coords.empty()) throw std::invalid_argument("vector dimension must be positive");
    for (auto& c : coords) c = mod_floor(c, q);
    return ZqVector{q, std::move(coords)};
}

ZqVector zero_vector(int q, int d) {
    check_q(q);
    if (d < 1) throw std::invalid_argument("vector dimension must be positive");
    return ZqVector{q, std::vector<int>(d, 0)};
}

ZqVector parse_vector(int q, const std::string& text) {
    std::vector<int> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int val = std::stoi(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw std::invalid_argument("bad vector component: " + tok);
        coords.push_back(val);
    }
    if (coords.empty()) throw std::invalid_argument("empty vector text");
    return make_vector(q, std::move(coords));
}

std::string render_vector(const ZqVector& v) {
    std::string out;
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += ',';
        out += std::to_string(v.coords[i]);
    }
    return out;
}

int hamming_weight(const ZqVector& v) {
    int w = 0;
    for (int c : v.coords) w += (c != 0);
    return w;
}

int inner_product(const ZqVector& a, const ZqVector& b) {
    if (a.q != b.q || a.dim() != b.dim())
        throw std::invalid_argument("inner_product: mismatched shapes");
    long s = 0;
    for (int i = 0; i < a.dim(); ++i) s += long(a.coords[i]) * b.coords[i];
    return static_cast<int>(mod_floor(s, long(a.q)));
}

ZqVector add(const ZqVector& a, const ZqVector& b) {
    if (a.q != b.q || a.dim() != b.dim()) throw std::invalid_argument("add: mismatched shapes");
    ZqVector r = a;
    for (int i = 0; i < a.dim(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % a.q;
    return r;
}

ZqVector negate(const ZqVector& a) {
    ZqVector r = a;
    for (auto& c : r.coords) c = c ? a.q - c : 0;
    return r;
}

ZqVector scale(int lambda, const ZqVector& a) {
    ZqVector r = a;
    lambda = mod_floor(lambda, a.q);
    for (auto& c : r.coords) c = c * lambda % a.q;
    return r;
}

Submodule make_submodule(int q, int d, std::vector<std::vector<int>> gens) {
    check_module_q(q);
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    Submodule s{q, d, {}};
    for (auto& g : gens) {
        if (static_cast<int>(g.size()) != d)
            throw std::invalid_argument("generator has wrong dimension");
        s.generators.push_back(make_vector(q, std::move(g)));
    }
    return s;
}

Submodule parse_generator_lines(int q, const std::string& text) {
    std::vector<std::vector<int>> gens;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        gens.push_back(parse_vector(q, line).coords);
    }
    if (gens.empty()) throw std::invalid_argument("no generators in input");
    int d = static_cast<int>(gens.front().size());
    return make_submodule(q, d, std::move(gens));
}

std::uint64_t encode(const ZqVector& v) {
    std::uint64_t code = 0;
    double bits = v.dim() * std::log2(double(v.q));
    if (bits > 62) throw CapExceeded("vector encoding exceeds 63 bits");
    for (int i = v.dim() - 1; i >= 0; --i) code = code * v.q + v.coords[i];
    return code;
}

ZqVector decode(int q, int d, std::uint64_t code) {
    ZqVector v = zero_vector(q, d);
    for (int i = 0; i < d; ++i) {
        v.coords[i] = static_cast<int>(code % q);
        code /= q;
    }
    return v;
}

std::vector<ZqVector> enumerate_submodule(const Submodule& s) {
    const std::size_t cap = caps().enumeration;
    const int n = static_cast<int>(s.generators.size());
    double combos = std::pow(double(s.q), n);
    if (combos > double(cap))
        throw CapExceeded("enumerate_submodule: q^generators exceeds cap");

    // Dedupe via integer codes when they fit, coordinate sets otherwise.
    const bool encodable = s.d * std::log2(double(s.q)) <= 62;
    std::unordered_set<std::uint64_t> seen_codes;
    std::set<std::vector<int>> seen_vecs;
    auto insert_new = [&](const ZqVector& v) {
        return encodable ? seen_codes.insert(encode(v)).second
                         : seen_vecs.insert(v.coords).second;
    };

    std::vector<ZqVector> out;
    std::vector<int> y(n, 0);
    ZqVector cur = zero_vector(s.q, s.d);
    while (true) {
        if (insert_new(cur)) out.push_back(cur);
        // odometer increment; cur tracks sum of y[i] * gen[i]
        int i = 0;
        for (; i < n; ++i) {
            y[i]++;
            for (int k = 0; k < s.d; ++k)
                cur.coords[k] = (cur.coords[k] + s.generators[i].coords[k]) % s.q;
            if (y[i] < s.q) break;
            y[i] = 0;  // rolled over q times: net contribution q*gen = 0
        }
        if (i == n) break;
        if (out.size() > cap) throw CapExceeded("enumerate_submodule: element cap");
    }
    std::sort(out.begin(), out.end(),
              [](const ZqVector& a, const ZqVector& b) { return a.coords < b.coords; });
    return out;
}

Int submodule_size(const Submodule& s) {
    return Int(static_cast<unsigned long>(enumerate_submodule(s).size()));
}

namespace {

// Column echelon reduction of the d x n generator matrix over Z_q.
// Returns pivot rows and the reduced independent columns.  For q = 4 a pivot
// must be a unit; a nonzero column with no unit entry is rejected.
struct Echelon {
    std::vector<int> pivot_rows;
    std::vector<std::vector<int>> columns;  // reduced, one per pivot
};

Echelon column_echelon(const Submodule& s) {
    const int q = s.q, d = s.d;
    std::vector<std::vector<int>> cols;
    for (const auto& g : s.generators) cols.push_back(g.coords);

    Echelon e;
    std::vector chosen(d, false);
    for (auto& col : cols) {
        // eliminate existing pivots
        for (std::size_t k = 0; k < e.pivot_rows.size(); ++k) {
            int pr = e.pivot_rows[k];
            if (col[pr] == 0) continue;
            int factor = col[pr];  // pivot columns are normalized to 1 at pivot
            for (int i = 0; i < d; ++i)
                col[i] = mod_floor(col[i] - factor * e.columns[k][i], q);
        }
        int pivot = -1;
        for (int i = 0; i < d; ++i) {
            if (chosen[i] || col[i] == 0) continue;
            if (std::gcd(col[i], q) == 1) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            bool zero = std::all_of(col.begin(), col.end(), [](int c) { return c == 0; });
            if (zero) continue;  // dependent generator
            throw std::invalid_argument(
                "no unit-pivot systematic form: submodule is not free over Z_q");
        }
        int inv = unit_inverse(col[pivot], q);
        for (int i = 0; i < d; ++i) col[i] = col[i] * inv % q;
        chosen[pivot] = true;
        e.pivot_rows.push_back(pivot);
        e.columns.push_back(col);
    }
    return e;
}

}  // namespace

int rank(const Submodule& s) {
    return static_cast<int>(column_echelon(s).pivot_rows.size());
}

int minimum_distance(const Submodule& s) {
    auto elems = enumerate_submodule(s);
    int best = -1;
    for (const auto& e : elems) {
        int w = hamming_weight(e);
        if (w == 0) continue;
        if (best < 0 || w < best) best = w;
    }
    if (best < 0) throw std::invalid_argument("minimum_distance of the zero module");
    return best;
}

Int WeightEnumerator::total() const {
    Int t = 0;
    for (const auto& c : counts) t += c;
    return t;
}

WeightEnumerator weight_enumerator(int q, int d, const std::vector<ZqVector>& elements) {
    WeightEnumerator w{q, d, std::vector<Int>(d + 1, 0)};
    for (const auto& e : elements) w.counts[hamming_weight(e)] += 1;
    return w;
}

WeightEnumerator weight_enumerator(const Submodule& s) {
    return weight_enumerator(s.q, s.d, enumerate_submodule(s));
}

WeightEnumerator coset_weight_enumerator(const std::vector<ZqVector>& gamma,
                                         const ZqVector& rep) {
    WeightEnumerator w{rep.q, rep.dim(), std::vector<Int>(rep.dim() + 1, 0)};
    for (const auto& e : gamma) {
        int wt = 0;
        for (int i = 0; i < rep.dim(); ++i)
            wt += ((e.coords[i] + rep.coords[i]) % rep.q) != 0;
        w.counts[wt] += 1;
    }
    return w;
}

WeightEnumerator macwilliams_transform(const WeightEnumerator& w, const Int& subgroup_size) {
    const int d = w.d, q = w.q;
    if (subgroup_size <= 0) throw std::invalid_argument("subgroup size must be positive");
    // coefficient of y^j in (x+(q-1)y)^(d-w) (x-y)^w, homogeneous of degree d
    std::vector<Int> acc(d + 1, 0);
    for (int wt = 0; wt <= d; ++wt) {
        if (w.counts[wt] == 0) continue;
        for (int j = 0; j <= d; ++j) {
            Int coeff = 0;
            for (int v = std::max(0, j - (d - wt)); v <= std::min(wt, j); ++v) {
                Int term = binomial(d - wt, j - v) * int_pow(Int(q - 1), j - v) *
                           binomial(wt, v);
                if (v % 2) term = -term;
                coeff += term;
            }
            acc[j] += w.counts[wt] * coeff;
        }
    }
    WeightEnumerator dual{q, d, std::vector<Int>(d + 1, 0)};
    for (int j = 0; j <= d; ++j) {
        if (!divides(subgroup_size, acc[j]))
            throw std::invalid_argument("macwilliams_transform: non-integral coefficient");
        dual.counts[j] = acc[j] / subgroup_size;
        if (dual.counts[j] < 0)
            throw std::invalid_argument("macwilliams_transform: negative coefficient");
    }
    return dual;
}

WeightClassTriple weight_class_triple(const WeightEnumerator& w) {
    WeightClassTriple t{0, 0, 0};
    for (int wt = 0; wt <= w.d; ++wt) t[wt % 3] += w.counts[wt];
    return t;
}

SystematicForm parity_check_matrix(const Submodule& s) {
    Echelon e = column_echelon(s);
    const int q = s.q, d = s.d;
    const int r = static_cast<int>(e.pivot_rows.size());

    SystematicForm f;
    f.q = q;
    f.d = d;
    f.rank = r;

    // Permutation: non-pivot rows first, pivot rows last (in ascending order).
    std::vector<bool> is_pivot(d, false);
    for (int p : e.pivot_rows) is_pivot[p] = true;
    for (int i = 0; i < d; ++i)
        if (!is_pivot[i]) f.row_perm.push_back(i);
    std::vector<int> pivots_sorted = e.pivot_rows;
    std::sort(pivots_sorted.begin(), pivots_sorted.end());
    for (int p : pivots_sorted) f.row_perm.push_back(p);

    // Permuted generator matrix (R over S), columns ordered by pivot row.
    std::vector<int> col_order(r);
    for (int k = 0; k < r; ++k) {
        int idx = 0;
        while (e.pivot_rows[idx] != pivots_sorted[k]) ++idx;
        col_order[k] = idx;
    }
    const int m = d - r;
    // S is unit upper-triangular after normalization, invert by Gauss-Jordan.
    std::vector<std::vector<int>> S(r, std::vector<int>(r));
    std::vector<std::vector<int>> R(m, std::vector<int>(r));
    for (int k = 0; k < r; ++k) {
        const auto& col = e.columns[col_order[k]];
        for (int i = 0; i < m; ++i) R[i][k] = col[f.row_perm[i]];
        for (int i = 0; i < r; ++i) S[i][k] = col[f.row_perm[m + i]];
    }
    std::vector<std::vector<int>> Sinv(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) Sinv[i][i] = 1;
    std::vector<std::vector<int>> A = S;
    for (int c = 0; c < r; ++c) {
        int p = c;
        while (p < r && std::gcd(A[p][c], q) != 1) ++p;
        if (p == r) throw std::logic_error("systematic block not invertible");
        std::swap(A[p], A[c]);
        std::swap(Sinv[p], Sinv[c]);
        int inv = unit_inverse(A[c][c], q);
        for (int j = 0; j < r; ++j) {
            A[c][j] = A[c][j] * inv % q;
            Sinv[c][j] = Sinv[c][j] * inv % q;
        }
        for (int i = 0; i < r; ++i) {
            if (i == c || A[i][c] == 0) continue;
            int fct = A[i][c];
            for (int j = 0; j < r; ++j) {
                A[i][j] = mod_floor(A[i][j] - fct * A[c][j], q);
                Sinv[i][j] = mod_floor(Sinv[i][j] - fct * Sinv[c][j], q);
            }
        }
    }

    // Q = (I | -R S^{-1}) in the permuted frame.
    f.Q.assign(m, std::vector<int>(d, 0));
    for (int i = 0; i < m; ++i) {
        f.Q[i][i] = 1;
        for (int j = 0; j < r; ++j) {
            long acc = 0;
            for (int k = 0; k < r; ++k) acc += long(R[i][k]) * Sinv[k][j];
            f.Q[i][m + j] = mod_floor(-acc, long(q));
        }
    }
    return f;
}

std::vector<std::vector<int>> parity_check_original_order(const SystematicForm& f) {
    std::vector<std::vector<int>> Q(f.Q.size(), std::vector<int>(f.d, 0));
    for (std::size_t row = 0; row < f.Q.size(); ++row)
        for (int i = 0; i < f.d; ++i) Q[row][f.row_perm[i]] = f.Q[row][i];
    return Q;
}

Submodule dual_submodule(const Submodule& s) {
    auto rows = parity_check_original_order(parity_check_matrix(s));
    if (rows.empty()) {
        // dual of the full space is the zero module; represent with the zero generator
        return make_submodule(s.q, s.d, {std::vector<int>(s.d, 0)});
    }
    return make_submodule(s.q, s.d, std::move(rows));
}

std::vector<ZqVector> coset_transversal(const Submodule& s) {
    SystematicForm f = parity_check_matrix(s);
    const int m = f.d - f.rank;
    double total = std::pow(double(s.q), m);
    if (total > double(caps().enumeration))
        throw CapExceeded("coset_transversal: q^(d-rank) exceeds cap");

    std::vector<ZqVector> reps;
    std::vector<int> syndrome(m, 0);
    while (true) {
        ZqVector rep = zero_vector(s.q, s.d);
        for (int i = 0; i < m; ++i) rep.coords[f.row_perm[i]] = syndrome[i];
        reps.push_back(std::move(rep));
        int i = 0;
        for (; i < m; ++i) {
            if (++syndrome[i] < s.q) break;
            syndrome[i] = 0;
        }
        if (i == m) break;
    }
    return reps;
}

}  // namespace qmix::zq
