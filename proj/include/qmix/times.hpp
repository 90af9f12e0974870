#pragma once

#include <string>
#include <vector>

#include "qmix/cayley.hpp"
#include "qmix/polynomial.hpp"
#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

namespace qmix::times {

/// Integer Laurent polynomial; coeffs[i] holds the coefficient of
/// x^(min_exp + i).  Kept trimmed (no zero coefficients at either end).
struct LaurentPolynomial {
    long min_exp = 0;
    std::vector<Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    long max_exp() const { return min_exp + static_cast<long>(coeffs.size()) - 1; }
    Int coefficient(long e) const;
    bool palindromic() const;  // coefficient(m) == coefficient(-m)
};

/// Shift so the lowest exponent is zero (x-power factors carry no unit-circle
/// roots and are irrelevant to the time analysis).
poly::ZPoly normalized(const LaurentPolynomial& p);

/// F_g = (sum over pairs (a,b) with <a-b,g> = 0 of x^((theta_a-theta_b)/q))
/// minus q^d, aggregated from per-residue eigenvalue histograms.  Requires an
/// integer spectrum with all differences divisible by q (true for quotients
/// of Hamming graphs).
LaurentPolynomial build_fg(const cayley::ConnectionSet& c, const zq::ZqVector& g);

/// Primitive gcd over Z of the normalized nonzero F_g, with g running over
/// one representative per scalar-multiple class (scalars act trivially on the
/// constraint).  Never zero: F_0 has positive value at x = 1.
poly::ZPoly mixing_time_gcd(const cayley::ConnectionSet& c);

/// Exact test Phi_n | p; multiplicity-counting variant returns how many
/// times it divides.
bool cyclotomic_divisibility(const poly::ZPoly& p, long n);
int cyclotomic_multiplicity(const poly::ZPoly& p, long n);

/// (q-1)/2 (phi(n) + q - 1): a lower bound on |C| for mixing at 2pi/(qn).
Rat totient_bound(int q, long n);

/// q times the z-polynomial of the folded graph H(d,q)/<1>:
///   ((q-1)z + (q-1)^2 + 1)^d + (q-1)(2-z)^d - q^(d+1)
/// where z = 2cos(qt).  Identically zero when d = 1.  Roots in [-2,2] are
/// the admissible cosine values; z = 2-q is always a root.
poly::ZPoly folded_polynomial(int q, int d);

/// Real roots of p in [lo, hi]: exact integer candidates first (catches
/// tangential roots), then sign-change bisection to width 1e-12.
std::vector<double> real_roots_in_interval(const poly::ZPoly& p, double lo, double hi);

/// Admissible mixing-time family for folded Hamming graphs.
struct FoldedVerdict {
    int q = 2;
    int d = 2;
    bool admissible = false;  // q in {2,3,4}
    std::string family;       // textual description of the full time family
    std::vector<walk::WalkTime> representatives;
};

FoldedVerdict folded_verdict(int q, int d);

/// Cyclotomic scan of the F_g gcd.
struct MixingTimeReport {
    poly::ZPoly gcd;
    long scan_bound = 0;
    std::vector<std::pair<long, int>> cyclotomic_orders;  // (n, multiplicity)
    std::vector<walk::WalkTime> times;                    // 2pi/(qn) per order
    std::vector<double> real_roots_z;                     // roots of the z-form in [-2,2]
};

MixingTimeReport mixing_time_report(const cayley::ConnectionSet& c, long scan_bound);

}  // namespace qmix::times
