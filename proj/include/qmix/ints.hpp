#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmix {

/// Arbitrary-precision integer and rational types used throughout the
/// exact-arithmetic paths.  All counting, polynomial and character-sum
/// code that can exceed 64 bits goes through these.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(Int base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Largest e with p^e | n (n != 0).
inline long valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    long v = 0;
    Int q, r;
    n = abs(n);
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline bool divides(const Int& d, const Int& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// n mod m normalized to [0, m).
inline Int mod_floor(const Int& n, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long mod_floor(long n, long m) {
    long r = n % m;
    return r < 0 ? r + m : r;
}

inline long euler_totient(long n) {
    if (n <= 0) throw std::invalid_argument("totient of non-positive n");
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

/// Digits of n in base p, least significant first.
inline std::vector<long> base_digits(Int n, long p) {
    if (n < 0) throw std::invalid_argument("base_digits of negative n");
    std::vector<long> ds;
    Int base = p;
    while (n > 0) {
        ds.push_back(mpz_class(n % base).get_si());
        n /= base;
    }
    if (ds.empty()) ds.push_back(0);
    return ds;
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace qmix
