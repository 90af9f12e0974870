#include "qmix/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "qmix/cyclotomic.hpp"

namespace qmix::criteria {

namespace {

long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("value exceeds long range");
    return n.get_si();
}

/// sum_w counts[w] z^(d-w) times its conjugate, z = zeta_N^e.
cyc::CycInt enumerator_norm_element(const zq::WeightEnumerator& w, long n, long e) {
    cyc::ContextPtr ctx = cyc::context(n);
    std::vector<Int> buckets(n, Int(0));
    for (int i = 0; i <= w.d; ++i) buckets[mod_floor(e * long(w.d - i), n)] += w.counts[i];
    cyc::CycInt value = cyc::CycInt::from_buckets(ctx, buckets);
    return value * value.conjugate();
}

/// Same quantity when it is known to be a rational integer (n = 2, 3, 4).
Int enumerator_norm(const zq::WeightEnumerator& w, long n, long e) {
    return enumerator_norm_element(w, n, e).to_integer();
}

}  // namespace

walk::WalkTime canonical_time(int q) {
    switch (q) {
        case 2:
        case 4: {
            walk::WalkTime t = walk::rational_time(1, 8);
            t.text = "pi/4";
            return t;
        }
        case 3:
            return walk::rational_time(1, 9);  // 2pi/9
        default:
            throw std::invalid_argument("canonical time: q must be 2, 3 or 4");
    }
}

bool dual_condition(const zq::Submodule& gamma, const walk::WalkTime& t) {
    zq::WeightEnumerator w = zq::weight_enumerator(gamma);
    zq::WeightEnumerator dual = zq::macwilliams_transform(w, w.total());
    const Int target = dual.total();
    if (t.kind == walk::WalkTime::Kind::rational) {
        const long den = to_long(t.den);
        const long n = std::lcm(den, long(gamma.q));
        const long e = mod_floor(to_long(mod_floor(t.num * gamma.q, Int(n))) * (n / den), n);
        return enumerator_norm_element(dual, n, e) ==
               cyc::CycInt::integer(cyc::context(n), target);
    }
    const std::complex<double> z = std::polar(1.0, gamma.q * t.seconds());
    std::complex<double> acc = 0;
    for (int i = 0; i <= dual.d; ++i) acc += dual.counts[i].get_d() * std::pow(z, dual.d - i);
    return std::abs(std::norm(acc) - target.get_d()) <= 1e-9 * target.get_d();
}

std::vector<CosetReport> coset_condition_report(const zq::Submodule& gamma) {
    long n, e;
    switch (gamma.q) {
        case 2:
            n = 4, e = 1;  // zeta = i
            break;
        case 3:
            n = 3, e = 1;  // zeta = zeta_3
            break;
        case 4:
            n = 2, e = 1;  // zeta = -1
            break;
        default:
            throw std::invalid_argument("coset condition: q must be 2, 3 or 4");
    }
    std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
    const Int target = static_cast<unsigned long>(elems.size());
    std::vector<CosetReport> out;
    for (const auto& rep : zq::coset_transversal(gamma)) {
        zq::WeightEnumerator w = zq::coset_weight_enumerator(elems, rep);
        Int norm = enumerator_norm(w, n, e);
        out.push_back({rep, norm, target, norm == target});
    }
    return out;
}

bool coset_condition(const zq::Submodule& gamma, int q) {
    if (q != gamma.q) throw std::invalid_argument("coset condition: q mismatch");
    for (const auto& row : coset_condition_report(gamma))
        if (!row.ok) return false;
    return true;
}

bool coset_triple_condition(const zq::WeightClassTriple& counts, int s) {
    if (s < 1) throw std::invalid_argument("triple condition: rank must be at least 1");
    Int value = counts[0] * counts[1] + counts[0] * counts[2] + counts[1] * counts[2];
    return value == int_pow(3, 2 * s - 1) - int_pow(3, s - 1);
}

std::array<Int, 3> weight_change_profile(const zq::Submodule& gamma, const zq::ZqVector& c) {
    if (gamma.q != 3) throw std::invalid_argument("weight change: defined for q = 3");
    if (c.q != 3 || c.dim() != gamma.d)
        throw std::invalid_argument("weight change: shift vector shape mismatch");
    std::array<Int, 3> m = {Int(0), Int(0), Int(0)};
    for (const auto& g : zq::enumerate_submodule(gamma))
        if (2 * zq::inner_product(c, g) % 3 == 1) m[zq::hamming_weight(g) % 3] += 1;
    return m;
}

bool one_generator_verdict(const zq::ZqVector& a, int q) {
    if (a.q != q) throw std::invalid_argument("one-generator verdict: q mismatch");
    const int w = zq::hamming_weight(a);
    if (w < 3) throw std::invalid_argument("one-generator verdict: weight must be at least 3");
    // Only unit coordinates count.  At tau_q the parent amplitudes carry the
    // sign (-1)^wt, and in the coset sum over <a> a coordinate where a_j is a
    // zero divisor contributes the same sign pattern to the k and k+2 terms,
    // so it cancels out of the modulus.  For q in {2,3} every nonzero entry
    // is a unit and this reduces to the Hamming weight.
    int units = 0;
    for (int x : a.coords)
        if (x != 0 && std::gcd(x, q) == 1) ++units;
    switch (q) {
        case 2:
        case 4:
            return units % 2 == 1;
        case 3:
            return units % 3 != 0;
        default:
            throw std::invalid_argument("one-generator verdict: q must be 2, 3 or 4");
    }
}

bool two_generator_verdict(const zq::ZqVector& a, const zq::ZqVector& b) {
    if (a.q != 3 || b.q != 3) throw std::invalid_argument("two-generator verdict: q must be 3");
    if (a.dim() != b.dim()) throw std::invalid_argument("two-generator verdict: dimension mismatch");
    zq::Submodule gamma = zq::make_submodule(3, a.dim(), {a.coords, b.coords});
    if (zq::rank(gamma) != 2)
        throw std::invalid_argument("two-generator verdict: generators must have rank 2");
    if (zq::minimum_distance(gamma) < 3)
        throw std::invalid_argument("two-generator verdict: minimum distance below 3");
    const int wa = zq::hamming_weight(a) % 3;
    const int wb = zq::hamming_weight(b) % 3;
    const int ab = zq::inner_product(a, b);
    if (ab == 0) return wa != 0 && wb != 0;
    return wa != wb || (wa == 0 && wb == 0);
}

zq::WeightClassTriple weight_structure(const zq::WeightEnumerator& w) {
    zq::WeightClassTriple t = zq::weight_class_triple(w);
    std::sort(t.begin(), t.end());
    return t;
}

zq::Submodule binary_qr_code_17() {
    // Factor x^17 - 1 over F_2 by trial division of the degree-16 cofactor
    // (x^17-1)/(x-1) by monic degree-8 polynomials with constant term 1.
    // Exactly two factors exist (the cyclotomic cosets of 2 mod 17 have size
    // 8); they generate equivalent codes, so the smaller bitmask is chosen.
    auto gf2_mod = [](std::uint32_t num, std::uint32_t den, int num_deg, int den_deg) {
        for (int i = num_deg; i >= den_deg; --i)
            if (num >> i & 1) num ^= den << (i - den_deg);
        return num;
    };
    const std::uint32_t cofactor = 0x1FFFF;  // 1 + x + ... + x^16
    std::uint32_t generator = 0;
    for (std::uint32_t g = (1u << 8) | 1; g < (1u << 9); g += 2)
        if (gf2_mod(cofactor, g, 16, 8) == 0) {
            generator = g;
            break;  // candidates ascend, so the first hit is the smaller factor
        }
    if (generator == 0) throw std::logic_error("qr code: factorization failed");
    std::vector<std::vector<int>> gens;
    for (int shift = 0; shift < 9; ++shift) {
        std::vector<int> row(17, 0);
        for (int i = 0; i <= 8; ++i) row[i + shift] = generator >> i & 1;
        gens.push_back(std::move(row));
    }
    return zq::make_submodule(2, 17, std::move(gens));
}

}  // namespace qmix::criteria
