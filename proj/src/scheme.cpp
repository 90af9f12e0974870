#include "qmix/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmix/polynomial.hpp"

namespace qmix::scheme {

namespace {

void check_dq(int d, int q) {
    if (d < 0) throw std::invalid_argument("krawtchouk: d must be nonnegative");
    if (q < 2) throw std::invalid_argument("krawtchouk: q must be at least 2");
}

Int power_mod(const Int& base, const Int& mod) { return mod_floor(base, mod); }

}  // namespace

KrawtchoukTable krawtchouk_table(int d, int q) {
    check_dq(d, q);
    KrawtchoukTable t;
    t.d = d;
    t.q = q;
    t.p.resize(d + 1);
    poly::ZPoly up = {Int(1), Int(q - 1)};  // 1 + (q-1)x
    poly::ZPoly down = {Int(1), Int(-1)};   // 1 - x
    for (int s = 0; s <= d; ++s) {
        poly::ZPoly f = {Int(1)};
        for (int i = 0; i < d - s; ++i) f = poly::mul(f, up);
        for (int i = 0; i < s; ++i) f = poly::mul(f, down);
        f.resize(d + 1, Int(0));
        t.p[s] = std::move(f);
    }
    return t;
}

Int krawtchouk_sum(int d, int q, int r, int s) {
    check_dq(d, q);
    if (r < 0 || r > d || s < 0 || s > d) throw std::out_of_range("krawtchouk: index out of range");
    Int acc = 0;
    for (int h = 0; h <= std::min(r, s); ++h) {
        Int term = int_pow(-q, h) * int_pow(q - 1, r - h);
        term *= binomial(d - h, r - h);
        term *= binomial(s, h);
        acc += term;
    }
    return acc;
}

RecurrenceReport verify_recurrences(int d, int q) {
    check_dq(d, q);
    RecurrenceReport rep;
    KrawtchoukTable big = krawtchouk_table(d + 1, q);
    KrawtchoukTable tab = krawtchouk_table(d, q);
    KrawtchoukTable small = d >= 1 ? krawtchouk_table(d - 1, q) : KrawtchoukTable{};

    rep.contiguous = true;
    for (int r = 1; r <= d; ++r)
        for (int s = 1; s <= d; ++s)
            if (tab(s, r) - tab(s - 1, r) + Int(q - 1) * tab(s, r - 1) + tab(s - 1, r - 1) != 0)
                rep.contiguous = false;

    rep.dimension = true;
    for (int r = 1; r <= d + 1; ++r)
        for (int s = 0; s <= d; ++s)
            if (big(s, r) - big(s + 1, r) != Int(q) * tab(s, r - 1)) rep.dimension = false;

    rep.four_term_q2 = true;
    if (q == 2) {
        for (int r = 1; r <= d; ++r)
            for (int s = 0; s + 2 <= d; ++s) {
                Int rhs = 0;
                for (int h = 0; h <= r - 2; ++h) {
                    if (d - 2 - h < r - 2 - h) continue;
                    rhs += int_pow(-2, h) * binomial(d - 2 - h, r - 2 - h) * binomial(s, h);
                }
                if (tab(s, r - 1) - tab(s + 2, r - 1) != 4 * rhs) rep.four_term_q2 = false;
            }
    }

    // Matrix form of the dimension recurrence: differencing consecutive rows
    // of P over H(d,q) reproduces q P over H(d-1,q) with columns shifted by
    // one (column 0 of the difference vanishes since p_0 = 1).
    rep.matrix_form = d >= 1;
    for (int s = 0; s + 1 <= d && rep.matrix_form; ++s) {
        if (tab(s, 0) - tab(s + 1, 0) != 0) rep.matrix_form = false;
        for (int r = 1; r <= d; ++r)
            if (tab(s, r) - tab(s + 1, r) != Int(q) * small(s, r - 1)) rep.matrix_form = false;
    }
    return rep;
}

void validate_scheme_spec(const SchemeGraphSpec& spec) {
    check_dq(spec.d, spec.q);
    if (spec.classes.empty()) throw std::invalid_argument("scheme graph: no distance classes");
    std::vector<int> cs = spec.classes;
    std::sort(cs.begin(), cs.end());
    if (std::unique(cs.begin(), cs.end()) != cs.end())
        throw std::invalid_argument("scheme graph: repeated distance class");
    if (cs.front() < 1 || cs.back() > spec.d)
        throw std::invalid_argument("scheme graph: distance class out of [1,d]");
}

std::vector<Int> scheme_eigenvalues(const SchemeGraphSpec& spec) {
    validate_scheme_spec(spec);
    KrawtchoukTable tab = krawtchouk_table(spec.d, spec.q);
    std::vector<Int> theta(spec.d + 1, Int(0));
    for (int s = 0; s <= spec.d; ++s)
        for (int r : spec.classes) theta[s] += tab(s, r);
    return theta;
}

CongruenceResult theta_congruence_condition(const std::vector<Int>& theta, int q, int k) {
    if (k < 2) throw std::invalid_argument("theta congruence: k must be at least 2");
    if (theta.empty()) throw std::invalid_argument("theta congruence: empty eigenvalue list");
    Int modulus, step;
    bool signed_eps = true;
    switch (q) {
        case 2:
            modulus = int_pow(2, k + 1);
            step = int_pow(2, k - 1);
            break;
        case 3:
            modulus = int_pow(3, k);
            step = int_pow(3, k - 1);
            break;
        case 4:
            modulus = int_pow(2, k + 1);
            step = int_pow(2, k);
            signed_eps = false;
            break;
        default:
            throw std::invalid_argument("theta congruence: q must be 2, 3 or 4");
    }
    for (int eps : {+1, -1}) {
        bool ok = true;
        for (std::size_t s = 1; s < theta.size(); ++s)
            if (power_mod(theta[s] - theta[0] - Int(eps) * step * long(s), modulus) != 0) {
                ok = false;
                break;
            }
        if (ok) return {true, signed_eps ? eps : 0};
        if (!signed_eps) break;  // 2^k s and -2^k s agree mod 2^(k+1)
    }
    return {false, 0};
}

CongruenceResult scheme_graph_condition(const SchemeGraphSpec& spec, int k) {
    validate_scheme_spec(spec);
    if (k < 2) throw std::invalid_argument("scheme condition: k must be at least 2");
    if (spec.d < 1) throw std::invalid_argument("scheme condition: d must be at least 1");
    Int modulus, target;
    bool signed_eps = true;
    switch (spec.q) {
        case 2:
            modulus = int_pow(2, k);
            target = int_pow(2, k - 2);
            break;
        case 3:
            modulus = int_pow(3, k - 1);
            target = int_pow(3, k - 2);
            break;
        case 4:
            modulus = int_pow(2, k - 1);
            target = int_pow(2, k - 2);
            signed_eps = false;
            break;
        default:
            throw std::invalid_argument("scheme condition: q must be 2, 3 or 4");
    }
    KrawtchoukTable small = krawtchouk_table(spec.d - 1, spec.q);
    std::vector<Int> v(spec.d, Int(0));  // v[s] = sum_r a_r p_{r-1}^{(d-1)}(s)
    for (int s = 0; s <= spec.d - 1; ++s)
        for (int r : spec.classes) v[s] += small(s, r - 1);
    for (int eps : {+1, -1}) {
        bool ok = true;
        for (const Int& x : v)
            if (power_mod(x - Int(eps) * target, modulus) != 0) {
                ok = false;
                break;
            }
        if (ok) return {true, signed_eps ? eps : 0};
        if (!signed_eps) break;  // -2^(k-2) = 2^(k-2) mod 2^(k-1)
    }
    return {false, 0};
}

CongruenceResult distance_family_condition_q3(int d, int r, int k) {
    if (d < 1 || r < 1 || r > d || k < 2)
        throw std::invalid_argument("q=3 family condition: bad parameters");
    Int modulus = int_pow(3, k - 1);
    Int lead = power_mod(int_pow(2, r - 1) * binomial(d - 1, r - 1), modulus);
    int eps = 0;
    if (lead == power_mod(int_pow(3, k - 2), modulus)) eps = 1;
    if (lead == power_mod(-int_pow(3, k - 2), modulus)) eps = -1;
    if (eps == 0) return {false, 0};
    for (int h = 1; h <= k - 2; ++h) {
        if (r - h - 1 < 0 || d - h - 1 < r - h - 1) continue;  // binomial is 0, divisible
        if (!divides(int_pow(3, k - h - 1), binomial(d - h - 1, r - h - 1))) return {false, 0};
    }
    return {true, eps};
}

bool distance_family_condition_q4(int d, int r, int k) {
    if (d < 1 || r < 1 || r > d || k < 2)
        throw std::invalid_argument("q=4 family condition: bad parameters");
    Int modulus = int_pow(2, k - 1);
    if (power_mod(int_pow(3, r - 1) * binomial(d - 1, r - 1) - int_pow(2, k - 2), modulus) != 0)
        return false;
    for (int h = 1; h <= k / 2 - 1; ++h) {
        if (r - h - 1 < 0 || d - h - 1 < r - h - 1) continue;
        if (!divides(int_pow(2, k - 2 * h - 1), binomial(d - h - 1, r - h - 1))) return false;
    }
    return true;
}

int kummer_carries(const Int& n, const Int& m, int p) {
    if (m < 0 || m > n) throw std::out_of_range("kummer: need 0 <= m <= n");
    if (p < 2) throw std::invalid_argument("kummer: p must be prime");
    for (int f = 2; f * f <= p; ++f)
        if (p % f == 0) throw std::invalid_argument("kummer: p must be prime");
    std::vector<long> a = base_digits(m, p);
    std::vector<long> b = base_digits(n - m, p);
    std::size_t len = std::max(a.size(), b.size());
    a.resize(len, 0);
    b.resize(len, 0);
    int carries = 0, carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        carry = (a[i] + b[i] + carry) >= p ? 1 : 0;
        carries += carry;
    }
    return carries;
}

std::vector<FamilyInstance> enumerate_families(int k_max, int q) {
    if (k_max < 2) throw std::invalid_argument("families: k_max must be at least 2");
    std::vector<FamilyInstance> out;
    if (q == 3) {
        for (int k = 2; k <= k_max; ++k) {
            int pk = 1;
            for (int i = 0; i < k; ++i) pk *= 3;
            int d = 2 * pk - 9;
            for (int r : {pk - 1, pk - 4, pk - 7}) {
                bool ok = r >= 1 && r <= d && distance_family_condition_q3(d, r, k).satisfied;
                out.push_back({3, d, r, k, ok});
            }
        }
    } else if (q == 4) {
        for (int k = 2; k <= k_max; ++k) {
            int pk = 1 << k;
            int d1 = pk / 2 - 1;
            int r1 = pk / 4;
            out.push_back({4, d1, r1, k,
                           r1 >= 1 && r1 <= d1 && distance_family_condition_q4(d1, r1, k)});
            int d2 = pk - 2;
            for (int r : {pk / 2 - 1, pk / 2})
                out.push_back({4, d2, r, k,
                               r >= 1 && r <= d2 && distance_family_condition_q4(d2, r, k)});
        }
    } else {
        throw std::invalid_argument("families: q must be 3 or 4");
    }
    return out;
}

UnionClassGraph union_class_graph_dim(int d, int i) {
    if (d < 1) throw std::invalid_argument("union graph: d must be at least 1");
    if (i < 0 || i > 2) throw std::invalid_argument("union graph: class residue must be 0, 1 or 2");
    SchemeGraphSpec spec;
    spec.d = d;
    spec.q = 3;
    for (int r = 1; r <= d; ++r)
        if (r % 3 == i) spec.classes.push_back(r);
    UnionClassGraph g;
    g.theta = scheme_eigenvalues(spec);
    g.spec = std::move(spec);
    return g;
}

UnionClassGraph union_class_graph(int k, int i) {
    if (k < 1) throw std::invalid_argument("union graph: k must be at least 1");
    return union_class_graph_dim(2 * k + 1, i);
}

}  // namespace qmix::scheme
