#include "doctest.h"

#include "qmix/cyclotomic.hpp"
#include "qmix/polynomial.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace qmix;
using cyc::CycInt;

namespace {

// Independent route: zeta_N^e as a complex double.
std::complex<double> root(long n, long e) {
    double arg = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(n);
    return {std::cos(arg), std::sin(arg)};
}

}  // namespace

TEST_CASE("context degree equals Euler phi") {
    CHECK(cyc::context(1)->degree() == 1);
    CHECK(cyc::context(4)->degree() == 2);
    CHECK(cyc::context(9)->degree() == 6);
    CHECK(cyc::context(12)->degree() == 4);
    CHECK(cyc::context(81)->degree() == 54);
}

TEST_CASE("context cache returns shared instances") {
    CHECK(cyc::context(24).get() == cyc::context(24).get());
}

TEST_CASE("power basis reduction: zeta_4 squared is minus one") {
    auto ctx = cyc::context(4);
    auto z2 = CycInt::unit_root(ctx, 2);
    CHECK(z2 == CycInt::integer(ctx, Int(-1)));
}

TEST_CASE("geometric sum of all roots vanishes") {
    for (long n : {3L, 8L, 9L, 12L}) {
        auto ctx = cyc::context(n);
        auto s = CycInt::zero(ctx);
        for (long e = 0; e < n; ++e) s += CycInt::unit_root(ctx, e);
        CHECK(s == CycInt::zero(ctx));
    }
}

TEST_CASE("ring arithmetic agrees with complex arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> exp_pick(0, 23);
    std::uniform_int_distribution<int> coeff_pick(-4, 4);
    auto ctx = cyc::context(24);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> ca(ctx->degree()), cb(ctx->degree());
        for (auto& c : ca) c = Int(coeff_pick(rng));
        for (auto& c : cb) c = Int(coeff_pick(rng));
        CycInt a(ctx, ca), b(ctx, cb);
        auto prod = a * b;
        auto sum = a + b;
        auto za = a.to_complex(), zb = b.to_complex();
        CHECK(std::abs(prod.to_complex() - za * zb) < 1e-8);
        CHECK(std::abs(sum.to_complex() - (za + zb)) < 1e-9);
        CHECK(std::abs(a.conjugate().to_complex() - std::conj(za)) < 1e-9);
    }
    (void)exp_pick;
}

TEST_CASE("conjugation inverts unit roots") {
    auto ctx = cyc::context(9);
    for (long e = 0; e < 9; ++e) {
        auto z = CycInt::unit_root(ctx, e);
        CHECK(z * z.conjugate() == CycInt::integer(ctx, Int(1)));
    }
}

TEST_CASE("norm via ring equality: 2 + zeta_3 has norm 3") {
    auto ctx = cyc::context(3);
    auto z = CycInt::integer(ctx, Int(2)) + CycInt::unit_root(ctx, 1);
    CHECK(z * z.conjugate() == CycInt::integer(ctx, Int(3)));
    CHECK(z.norm_squared() == Int(3));
}

TEST_CASE("norm_squared throws when the product is irrational") {
    // 1 + zeta_5 times its conjugate is 2 + zeta + zeta^4, not an integer.
    auto ctx = cyc::context(5);
    auto z = CycInt::integer(ctx, Int(1)) + CycInt::unit_root(ctx, 1);
    CHECK_THROWS(z.norm_squared());
    CHECK_FALSE(z * z.conjugate() == CycInt::integer(ctx, Int(2)));
}

TEST_CASE("from_buckets matches explicit summation") {
    auto ctx = cyc::context(12);
    std::vector<Int> counts(12);
    counts[0] = Int(3);
    counts[5] = Int(-2);
    counts[11] = Int(7);
    auto direct = CycInt::zero(ctx);
    for (long e = 0; e < 12; ++e) {
        for (Int k = counts[e]; k > 0; --k) direct += CycInt::unit_root(ctx, e);
        for (Int k = counts[e]; k < 0; ++k) direct += CycInt::integer(ctx, Int(-1)) * CycInt::unit_root(ctx, e);
    }
    CHECK(CycInt::from_buckets(ctx, counts) == direct);
}

TEST_CASE("is_integer and to_integer") {
    auto ctx = cyc::context(8);
    auto z = CycInt::integer(ctx, Int(-17));
    CHECK(z.is_integer());
    CHECK(z.to_integer() == Int(-17));
    CHECK_FALSE(CycInt::unit_root(ctx, 1).is_integer());
}

TEST_CASE("cyclotomic polynomial products rebuild x^n - 1") {
    for (long n = 1; n <= 24; ++n) {
        poly::ZPoly prod = {Int(1)};
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod = poly::mul(prod, poly::cyclotomic_polynomial(d));
        poly::ZPoly target(n + 1, Int(0));
        target[0] = Int(-1);
        target[n] = Int(1);
        CHECK(poly::trim(prod) == poly::trim(target));
    }
}

TEST_CASE("polynomial gcd is a common divisor of both inputs") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        auto rand_poly = [&](int deg) {
            poly::ZPoly p(deg + 1);
            for (auto& c : p) c = Int(pick(rng));
            p[deg] = Int(1 + std::abs(pick(rng)));
            return p;
        };
        auto common = rand_poly(2);
        auto a = poly::mul(common, rand_poly(3));
        auto b = poly::mul(common, rand_poly(2));
        auto g = poly::gcd(a, b);
        CHECK(poly::degree(g) >= poly::degree(common));
        // The gcd is primitive and divides both products exactly.
        CHECK_NOTHROW(poly::exact_div(a, g));
        CHECK_NOTHROW(poly::exact_div(b, g));
    }
}

TEST_CASE("mod_monic computes polynomial remainders") {
    // x^4 - 1 mod (x^2 + 1) = 0; x^3 mod (x^2 + 1) = -x.
    poly::ZPoly x4m1 = {Int(-1), Int(0), Int(0), Int(0), Int(1)};
    poly::ZPoly x2p1 = {Int(1), Int(0), Int(1)};
    CHECK(poly::is_zero(poly::mod_monic(x4m1, x2p1)));
    poly::ZPoly x3 = {Int(0), Int(0), Int(0), Int(1)};
    auto r = poly::mod_monic(x3, x2p1);
    CHECK(r == poly::ZPoly{Int(0), Int(-1)});
}

TEST_CASE("content and primitive part") {
    poly::ZPoly p = {Int(6), Int(-9), Int(12)};
    CHECK(poly::content(p) == Int(3));
    CHECK(poly::primitive_part(p) == poly::ZPoly{Int(2), Int(-3), Int(4)});
}

TEST_CASE("exact division round trips") {
    poly::ZPoly a = {Int(1), Int(2), Int(1)};   // (x+1)^2
    poly::ZPoly b = {Int(1), Int(1)};           // x+1
    CHECK(poly::exact_div(a, b) == b);
    CHECK_THROWS(poly::exact_div(poly::ZPoly{Int(1), Int(0), Int(1)}, b));
}
