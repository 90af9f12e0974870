#include "doctest.h"

#include "qmix/scheme.hpp"
#include "qmix/cayley.hpp"
#include "qmix/zq.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace qmix;

namespace {

Int int_pow(long b, long e) {
    Int out(1);
    for (long i = 0; i < e; ++i) out *= Int(b);
    return out;
}

int valuation(Int n, int p) {
    if (n == 0) return -1;
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

TEST_CASE("krawtchouk table against the closed sum") {
    for (int q : {2, 3, 4})
        for (int d : {1, 2, 3, 5, 8, 12, 20, 30, 40}) {
            auto table = scheme::krawtchouk_table(d, q);
            for (int s = 0; s <= d; ++s)
                for (int r = 0; r <= d; ++r)
                    CHECK(table(s, r) == scheme::krawtchouk_sum(d, q, r, s));
        }
}

TEST_CASE("krawtchouk boundary values") {
    for (int q : {2, 3, 4})
        for (int d : {3, 7, 11}) {
            auto table = scheme::krawtchouk_table(d, q);
            for (int s = 0; s <= d; ++s) CHECK(table(s, 0) == Int(1));
            for (int r = 0; r <= d; ++r)
                CHECK(table(0, r) == int_pow(q - 1, r) * binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(r)));
            // Row sums: evaluation at x = 1 gives q^d delta(s, 0) - ... via
            // (1+(q-1))^(d-s) (1-1)^s = 0 for s > 0.
            for (int s = 1; s <= d; ++s) {
                Int sum(0);
                for (int r = 0; r <= d; ++r) sum += table(s, r);
                CHECK(sum == Int(0));
            }
        }
}

TEST_CASE("krawtchouk orthogonality") {
    int d = 6;
    for (int q : {2, 3, 4}) {
        auto table = scheme::krawtchouk_table(d, q);
        for (int r = 0; r <= d; ++r)
            for (int rp = 0; rp <= d; ++rp) {
                Int sum(0);
                for (int s = 0; s <= d; ++s)
                    sum += int_pow(q - 1, s) * binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(s)) * table(s, r) * table(s, rp);
                Int expect = (r == rp) ? int_pow(q, d) * int_pow(q - 1, r) * binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(r)) : Int(0);
                CHECK(sum == expect);
            }
    }
}

TEST_CASE("recurrence report is clean across small dimensions") {
    for (int q : {2, 3, 4})
        for (int d = 1; d <= 12; ++d) {
            auto report = scheme::verify_recurrences(d, q);
            CHECK(report.contiguous);
            CHECK(report.dimension);
            CHECK(report.four_term_q2);
            CHECK(report.matrix_form);
            CHECK(report.all());
        }
}

TEST_CASE("character sphere sums reproduce Krawtchouk values") {
    // sum over wt(a) = s of psi_a(g) depends only on wt(g) and equals
    // p_s(wt(g)): brute force over Z_q^d.
    for (int q : {2, 3}) {
        int d = 4;
        auto table = scheme::krawtchouk_table(d, q);
        auto ctx = cyc::context(q);
        long n = 1;
        for (int i = 0; i < d; ++i) n *= q;
        for (long gcode = 0; gcode < n; ++gcode) {
            auto g = zq::decode(q, d, gcode);
            for (int s = 1; s <= d; ++s) {
                auto sphere = cayley::distance_connection_set(d, q, s);
                auto sum = cyc::CycInt::zero(ctx);
                for (const auto& a : sphere.elements)
                    sum += cyc::CycInt::unit_root(ctx, zq::inner_product(a, g));
                REQUIRE(sum.is_integer());
                CHECK(sum.to_integer() == table(zq::hamming_weight(g), s));
            }
        }
    }
}

TEST_CASE("scheme eigenvalues sum selected classes") {
    scheme::SchemeGraphSpec spec{5, 3, {1, 4}};
    auto theta = scheme::scheme_eigenvalues(spec);
    auto table = scheme::krawtchouk_table(5, 3);
    REQUIRE(theta.size() == 6u);
    for (int s = 0; s <= 5; ++s) CHECK(theta[s] == table(s, 1) + table(s, 4));
    CHECK_THROWS(scheme::validate_scheme_spec(scheme::SchemeGraphSpec{5, 3, {0}}));
    CHECK_THROWS(scheme::validate_scheme_spec(scheme::SchemeGraphSpec{5, 3, {6}}));
    CHECK_THROWS(scheme::validate_scheme_spec(scheme::SchemeGraphSpec{5, 3, {2, 2}}));
}

TEST_CASE("theta congruence matches hand-computed union spectra") {
    // d = 5, classes = {1, 4}: eigenvalues (90, -9, 0, 9, -9, 0).
    auto u = scheme::union_class_graph(2, 1);
    REQUIRE(u.spec.d == 5);
    REQUIRE(u.spec.classes == std::vector<int>{1, 4});
    CHECK(u.theta == std::vector<Int>{Int(90), Int(-9), Int(0), Int(9), Int(-9), Int(0)});

    // Differences are 0, -99, -90, -81, -99, -90: = 9s pattern mod 27.
    auto k3 = scheme::theta_congruence_condition(u.theta, 3, 3);
    CHECK(k3.satisfied);
    CHECK(k3.epsilon == 1);
    // At k = 2 every difference is 0 mod 9: the 3s pattern fails.
    CHECK_FALSE(scheme::theta_congruence_condition(u.theta, 3, 2).satisfied);
}

TEST_CASE("union class graphs cover all residues") {
    for (int i : {0, 1, 2}) {
        auto u = scheme::union_class_graph(2, i);
        CHECK(u.spec.d == 5);
        for (int r : u.spec.classes) {
            CHECK(r >= 1);
            CHECK(r % 3 == i);
        }
        CHECK(u.theta.size() == 6u);
    }
    auto v = scheme::union_class_graph_dim(4, 0);
    CHECK(v.spec.d == 4);
    CHECK(v.spec.classes == std::vector<int>{3});
}

TEST_CASE("hamming graph satisfies the theta congruence at the base level") {
    // H(d,3): theta_s - theta_0 = -3s: eps = -1, k = 2 requires -3s mod 9.
    auto table = scheme::krawtchouk_table(7, 3);
    std::vector<Int> theta;
    for (int s = 0; s <= 7; ++s) theta.push_back(table(s, 1));
    auto res = scheme::theta_congruence_condition(theta, 3, 2);
    CHECK(res.satisfied);
    CHECK(res.epsilon == -1);
}

TEST_CASE("scheme graph condition implies the eigenvalue congruence") {
    std::vector<scheme::SchemeGraphSpec> specs = {
        {9, 3, {2}}, {9, 3, {5}}, {9, 3, {8}}, {5, 3, {2, 5}},
        {3, 4, {2}}, {6, 4, {3}}, {6, 4, {4}},
    };
    std::vector<int> ks = {2, 2, 2, 3, 3, 3, 3};
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto cond = scheme::scheme_graph_condition(specs[i], ks[i]);
        if (!cond.satisfied) continue;
        auto theta = scheme::scheme_eigenvalues(specs[i]);
        auto res = scheme::theta_congruence_condition(theta, specs[i].q, ks[i]);
        CHECK(res.satisfied);
    }
}

TEST_CASE("kummer carries equal the p-adic valuation of binomials") {
    for (int p : {2, 3}) {
        for (long n = 0; n <= 120; ++n)
            for (long m = 0; m <= n; ++m)
                CHECK(scheme::kummer_carries(Int(n), Int(m), p) == valuation(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(m)), p));
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> pick(0, 2000);
        for (int trial = 0; trial < 200; ++trial) {
            long n = pick(rng);
            std::uniform_int_distribution<long> pick_m(0, n);
            long m = pick_m(rng);
            CHECK(scheme::kummer_carries(Int(n), Int(m), p) == valuation(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(m)), p));
        }
    }
}

TEST_CASE("family conditions hold along the enumerated families") {
    for (int q : {3, 4}) {
        auto instances = scheme::enumerate_families(4, q);
        CHECK_FALSE(instances.empty());
        for (const auto& inst : instances) {
            CHECK(inst.q == q);
            CHECK(inst.condition);
            if (q == 3) {
                CHECK(inst.d == 2 * static_cast<int>(std::pow(3, inst.k)) - 9);
            } else {
                bool narrow = inst.d == (1 << (inst.k - 1)) - 1;
                bool wide = inst.d == (1 << inst.k) - 2;
                CHECK((narrow || wide));
            }
        }
    }
    // k = 2, q = 3: d = 9, r in {2, 5, 8}.
    auto q3 = scheme::enumerate_families(2, 3);
    REQUIRE(q3.size() == 3u);
    std::vector<int> rs;
    for (const auto& inst : q3) rs.push_back(inst.r);
    std::sort(rs.begin(), rs.end());
    CHECK(rs == std::vector<int>{2, 5, 8});
}

TEST_CASE("single class conditions reject off-family parameters") {
    CHECK(scheme::distance_family_condition_q3(9, 2, 2).satisfied);
    CHECK(scheme::distance_family_condition_q3(9, 8, 2).satisfied);
    // d-1 = 3 makes binom(3,1) = 0 mod 3: condition (i) fails.
    CHECK_FALSE(scheme::distance_family_condition_q3(4, 2, 2).satisfied);
    CHECK(scheme::distance_family_condition_q4(2, 1, 2));
    CHECK_FALSE(scheme::distance_family_condition_q4(6, 2, 3));
}
