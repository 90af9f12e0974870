#include "qmix/times.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "qmix/config.hpp"
#include "qmix/ints.hpp"

namespace qmix::times {

namespace {

LaurentPolynomial laurent_from_map(const std::map<long, Int>& terms) {
    LaurentPolynomial p;
    long lo = 0;
    long hi = -1;
    bool seen = false;
    for (const auto& [e, c] : terms) {
        if (c == 0) continue;
        if (!seen) lo = e;
        hi = e;
        seen = true;
    }
    if (!seen) return p;
    p.min_exp = lo;
    p.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), Int(0));
    for (const auto& [e, c] : terms) {
        if (e < lo || e > hi) continue;
        p.coeffs[static_cast<std::size_t>(e - lo)] = c;
    }
    return p;
}

LaurentPolynomial build_fg_from_spectrum(const cayley::ConnectionSet& c,
                                         const zq::ZqVector& g,
                                         const std::vector<long long>& theta) {
    if (g.q != c.q || g.dim() != c.d)
        throw std::invalid_argument("build_fg: vector does not match the graph's group");
    const long q = c.q;
    const Int n = c.vertex_count();

    // One eigenvalue histogram per residue of <a,g>.
    std::vector<std::map<long long, Int>> hist(static_cast<std::size_t>(q));
    const std::uint64_t nn = theta.size();
    for (std::uint64_t code = 0; code < nn; ++code) {
        const zq::ZqVector a = zq::decode(c.q, c.d, code);
        const int r = zq::inner_product(a, g);
        hist[static_cast<std::size_t>(r)][theta[code]] += 1;
    }

    std::map<long, Int> terms;
    for (const auto& h : hist) {
        if (h.empty()) continue;
        const long long base = h.begin()->first;
        for (const auto& [t1, c1] : h) {
            if ((t1 - base) % q != 0)
                throw std::invalid_argument(
                    "build_fg: eigenvalue differences not divisible by q; "
                    "the graph is not a Hamming quotient");
            for (const auto& [t2, c2] : h) {
                terms[static_cast<long>((t1 - t2) / q)] += c1 * c2;
            }
        }
    }
    terms[0] -= n;
    return laurent_from_map(terms);
}

/// g is the representative of its unit-scalar class if it compares lowest.
bool canonical_under_scalars(const zq::ZqVector& v) {
    for (int lam = 2; lam < v.q; ++lam) {
        if (v.q == 4 && lam == 2) continue;  // 2 is not a unit mod 4
        const zq::ZqVector w = zq::scale(lam, v);
        if (w.coords < v.coords) return false;
    }
    return true;
}

Int evaluate_int(const poly::ZPoly& p, const Int& x) {
    Int acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double evaluate_double(const poly::ZPoly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_double(Rat(*it));
    return acc;
}

/// Divide by (x - root) for root = +-1 when the remainder vanishes; returns
/// false (leaving p untouched) otherwise.
bool strip_linear_root(poly::ZPoly& p, int root) {
    if (evaluate_int(p, Int(root)) != 0) return false;
    poly::ZPoly q(p.size() - 1);
    Int carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + Int(root) * carry;
        q[i - 1] = carry;
    }
    p = std::move(q);
    return true;
}

}  // namespace

Int LaurentPolynomial::coefficient(long e) const {
    if (e < min_exp || e > max_exp()) return Int(0);
    return coeffs[static_cast<std::size_t>(e - min_exp)];
}

bool LaurentPolynomial::palindromic() const {
    const long hi = std::max(std::abs(min_exp), std::abs(max_exp()));
    for (long m = 1; m <= hi; ++m)
        if (coefficient(m) != coefficient(-m)) return false;
    return true;
}

poly::ZPoly normalized(const LaurentPolynomial& p) {
    return p.coeffs;  // shifting by x^{-min_exp} keeps every root off zero
}

LaurentPolynomial build_fg(const cayley::ConnectionSet& c, const zq::ZqVector& g) {
    return build_fg_from_spectrum(c, g, cayley::integer_spectrum(c));
}

poly::ZPoly mixing_time_gcd(const cayley::ConnectionSet& c) {
    const std::vector<long long> theta = cayley::integer_spectrum(c);
    const std::uint64_t n = theta.size();
    poly::ZPoly acc;  // zero; gcd(0, p) = primitive(p)
    for (std::uint64_t code = 0; code < n; ++code) {
        const zq::ZqVector g = zq::decode(c.q, c.d, code);
        if (!canonical_under_scalars(g)) continue;
        const LaurentPolynomial f = build_fg_from_spectrum(c, g, theta);
        if (f.is_zero()) continue;  // imposes no constraint
        acc = poly::gcd(acc, normalized(f));
        if (poly::degree(acc) == 0) break;  // gcd is trivial already
    }
    return acc;
}

bool cyclotomic_divisibility(const poly::ZPoly& p, long n) {
    if (poly::is_zero(p)) return true;
    return poly::is_zero(poly::mod_monic(p, poly::cyclotomic_polynomial(n)));
}

int cyclotomic_multiplicity(const poly::ZPoly& p, long n) {
    if (poly::is_zero(p)) throw std::invalid_argument("cyclotomic_multiplicity of zero");
    const poly::ZPoly phi = poly::cyclotomic_polynomial(n);
    poly::ZPoly rest = p;
    int mult = 0;
    while (poly::degree(rest) >= poly::degree(phi) &&
           poly::is_zero(poly::mod_monic(rest, phi))) {
        rest = poly::exact_div(rest, phi);
        ++mult;
    }
    return mult;
}

Rat totient_bound(int q, long n) {
    Rat b(q - 1, 2);
    b *= Rat(euler_totient(n) + q - 1);
    return b;
}

poly::ZPoly folded_polynomial(int q, int d) {
    if (q < 2 || d < 1) throw std::invalid_argument("folded_polynomial: need q >= 2, d >= 1");
    const Int qm1 = q - 1;
    const poly::ZPoly a{qm1 * qm1 + 1, qm1};  // (q-1)z + (q-1)^2 + 1
    const poly::ZPoly b{Int(2), Int(-1)};     // 2 - z
    poly::ZPoly apow{Int(1)}, bpow{Int(1)};
    for (int i = 0; i < d; ++i) {
        apow = poly::mul(apow, a);
        bpow = poly::mul(bpow, b);
    }
    poly::ZPoly f = poly::add(apow, poly::scale(bpow, qm1));
    const poly::ZPoly shift{-int_pow(Int(q), static_cast<unsigned long>(d) + 1)};
    return poly::add(f, shift);
}

std::vector<double> real_roots_in_interval(const poly::ZPoly& p, double lo, double hi) {
    std::vector<double> roots;
    if (poly::is_zero(p) || poly::degree(p) == 0) return roots;

    // Exact integer candidates catch tangential roots bisection would miss.
    for (long z = static_cast<long>(std::ceil(lo)); z <= static_cast<long>(std::floor(hi)); ++z)
        if (evaluate_int(p, Int(z)) == 0) roots.push_back(static_cast<double>(z));

    const auto known = [&roots](double x) {
        for (double r : roots)
            if (std::abs(x - r) < 1e-9) return true;
        return false;
    };

    const int kGrid = 4096;
    double prev_x = lo;
    double prev_f = evaluate_double(p, lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double x = lo + (hi - lo) * i / kGrid;
        const double f = evaluate_double(p, x);
        if (prev_f == 0.0 && !known(prev_x)) roots.push_back(prev_x);
        if (prev_f * f < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            while (b - a > 1e-13) {
                const double m = 0.5 * (a + b);
                const double fm = evaluate_double(p, m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            const double r = 0.5 * (a + b);
            if (!known(r)) roots.push_back(r);
        }
        prev_x = x;
        prev_f = f;
    }
    if (evaluate_double(p, hi) == 0.0 && !known(hi)) roots.push_back(hi);
    std::sort(roots.begin(), roots.end());
    return roots;
}

FoldedVerdict folded_verdict(int q, int d) {
    FoldedVerdict v;
    v.q = q;
    v.d = d;
    if (d < 2) {
        v.family = "single-vertex quotient; every time is trivially flat";
        return v;
    }
    if (q == 2 || q == 4) {
        v.admissible = true;
        v.family = "t = k*pi/4 for odd k";
        v.representatives = {walk::rational_time(1, 8), walk::rational_time(3, 8)};
    } else if (q == 3) {
        v.admissible = true;
        v.family = "t = 2k*pi/9 for k not divisible by 3";
        v.representatives = {walk::rational_time(1, 9), walk::rational_time(2, 9)};
    } else {
        v.family = "no admissible times; the z-polynomial has no root in [-2,2]";
    }
    return v;
}

MixingTimeReport mixing_time_report(const cayley::ConnectionSet& c, long scan_bound) {
    MixingTimeReport rep;
    rep.gcd = mixing_time_gcd(c);
    rep.scan_bound = scan_bound;
    for (long n = 1; n <= scan_bound; ++n) {
        const int mult = cyclotomic_multiplicity(rep.gcd, n);
        if (mult > 0) {
            rep.cyclotomic_orders.emplace_back(n, mult);
            rep.times.push_back(walk::rational_time(1, Int(c.q) * n));
        }
    }

    // The z = x + 1/x substitution applies once (x -+ 1) factors are removed;
    // those factors correspond to z = +-2 themselves.
    poly::ZPoly p = rep.gcd;
    bool at2 = false, atm2 = false;
    if (!poly::is_zero(p)) {
        while (poly::degree(p) >= 1 && strip_linear_root(p, 1)) at2 = true;
        while (poly::degree(p) >= 1 && strip_linear_root(p, -1)) atm2 = true;
    }
    if (!poly::is_zero(p) && poly::degree(p) >= 1 && poly::degree(p) % 2 == 0) {
        const std::size_t m0 = p.size() / 2;
        bool pal = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != p[p.size() - 1 - i]) pal = false;
        if (pal) {
            // p / x^m0 = c_{m0} + sum c_{m0+m} (x^m + x^-m); V_m = x^m + x^-m
            // satisfies V_0 = 2, V_1 = z, V_m = z V_{m-1} - V_{m-2}.
            poly::ZPoly zp{p[m0]};
            poly::ZPoly vprev{Int(2)}, vcur{Int(0), Int(1)};
            const poly::ZPoly zmono{Int(0), Int(1)};
            for (std::size_t m = 1; m <= m0; ++m) {
                zp = poly::add(zp, poly::scale(vcur, p[m0 + m]));
                poly::ZPoly vnext = poly::sub(poly::mul(zmono, vcur), vprev);
                vprev = std::move(vcur);
                vcur = std::move(vnext);
            }
            rep.real_roots_z = real_roots_in_interval(zp, -2.0, 2.0);
        }
    }
    if (atm2 && (rep.real_roots_z.empty() || rep.real_roots_z.front() > -2.0 + 1e-9))
        rep.real_roots_z.insert(rep.real_roots_z.begin(), -2.0);
    if (at2 && (rep.real_roots_z.empty() || rep.real_roots_z.back() < 2.0 - 1e-9))
        rep.real_roots_z.push_back(2.0);
    return rep;
}

}  // namespace qmix::times
