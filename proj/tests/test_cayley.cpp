#include "doctest.h"

#include "qmix/cayley.hpp"
#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace qmix;

namespace {

// Independent spectrum via dense eigendecomposition.
std::vector<double> dense_spectrum(const cayley::ConnectionSet& c) {
    auto a = walk::adjacency_matrix(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

TEST_CASE("hamming connection set size and validity") {
    for (int q : {2, 3, 4})
        for (int d = 1; d <= 4; ++d) {
            auto c = cayley::hamming_connection_set(d, q);
            CHECK(c.elements.size() == static_cast<std::size_t>(d * (q - 1)));
            CHECK_NOTHROW(cayley::validate_connection_set(c));
            CHECK(cayley::is_linear(c));
            CHECK(cayley::is_connected(c));
        }
}

TEST_CASE("distance connection set size") {
    auto c = cayley::distance_connection_set(5, 3, 2);
    CHECK(c.elements.size() == 10u * 4u);  // C(5,2) * 2^2
    CHECK(c.vertex_count() == 243u);
}

TEST_CASE("union connection set merges classes disjointly") {
    auto c = cayley::union_connection_set(4, 3, {1, 3});
    std::size_t expect = 4 * 2 + 4 * 8;
    CHECK(c.elements.size() == expect);
}

TEST_CASE("validate rejects sets that are not inverse closed") {
    CHECK_THROWS(cayley::make_connection_set(3, 2, {{1, 0}}));
    CHECK_THROWS(cayley::make_connection_set(3, 2, {{0, 0}}));
    CHECK_NOTHROW(cayley::make_connection_set(3, 2, {{1, 0}, {2, 0}}));
}

TEST_CASE("linearity detection over Z4") {
    // {v, 3v} without 2v is inverse-closed but not linear.
    auto c = cayley::make_connection_set(4, 1, {{1}, {3}});
    CHECK_FALSE(cayley::is_linear(c));
    auto full = cayley::make_connection_set(4, 1, {{1}, {2}, {3}});
    CHECK(cayley::is_linear(full));
}

TEST_CASE("connectivity requires full rank") {
    // Even-weight vectors in Z_2^3 span only the even subgroup.
    auto c = cayley::distance_connection_set(3, 2, 2);
    CHECK_FALSE(cayley::is_connected(c));
    CHECK(cayley::is_connected(cayley::hamming_connection_set(3, 2)));
}

TEST_CASE("json round trip") {
    auto c = cayley::union_connection_set(3, 4, {1});
    auto text = cayley::connection_set_to_json(c);
    auto back = cayley::connection_set_from_json(text);
    CHECK(back.q == c.q);
    CHECK(back.d == c.d);
    CHECK(back.elements.size() == c.elements.size());
}

TEST_CASE("quotient connection set of the folded Hamming graph") {
    auto gamma = zq::make_submodule(3, 3, {{1, 1, 1}});
    auto c = cayley::quotient_connection_set(gamma);
    CHECK(c.q == 3);
    CHECK(c.d == 2);
    CHECK(c.elements.size() == 6u);  // valency d(q-1) preserved
    CHECK(cayley::is_connected(c));
}

TEST_CASE("quotient connection set demands minimum distance three") {
    auto gamma = zq::make_submodule(3, 2, {{1, 1}});
    CHECK_THROWS(cayley::quotient_connection_set(gamma));
}

TEST_CASE("character eigenvalue matches the linear closed form for prime q") {
    for (int q : {2, 3})
        for (int d = 2; d <= 4; ++d) {
            auto c = cayley::hamming_connection_set(d, q);
            std::uint64_t n = c.vertex_count();
            for (std::uint64_t code = 0; code < n; ++code) {
                auto a = zq::decode(q, d, code);
                auto z = cayley::character_eigenvalue(c, a);
                REQUIRE(z.is_integer());
                Rat formula = cayley::linear_eigenvalue_formula(c, a);
                CHECK(formula.get_den() == 1);
                CHECK(z.to_integer() == formula.get_num());
            }
        }
}

TEST_CASE("character eigenvalues of Hamming graphs follow the weight rule") {
    // theta_a = d(q-1) - q * wt(a) depends only on the weight of a.
    for (int q : {2, 3, 4}) {
        int d = 3;
        auto c = cayley::hamming_connection_set(d, q);
        for (std::uint64_t code = 0; code < c.vertex_count(); ++code) {
            auto a = zq::decode(q, d, code);
            auto z = cayley::character_eigenvalue(c, a);
            REQUIRE(z.is_integer());
            CHECK(z.to_integer() == Int(d * (q - 1) - q * zq::hamming_weight(a)));
        }
    }
}

TEST_CASE("integer spectrum agrees with dense eigenvalues") {
    std::vector<cayley::ConnectionSet> sets;
    sets.push_back(cayley::hamming_connection_set(3, 3));
    sets.push_back(cayley::hamming_connection_set(2, 4));
    sets.push_back(cayley::distance_connection_set(4, 2, 2));
    sets.push_back(cayley::union_connection_set(3, 3, {1, 2}));
    auto gamma = zq::make_submodule(3, 4, {{1, 1, 1, 1}});
    sets.push_back(cayley::quotient_connection_set(gamma));
    for (const auto& c : sets) {
        auto exact = cayley::integer_spectrum(c);
        std::vector<double> want(exact.begin(), exact.end());
        std::sort(want.begin(), want.end());
        auto got = dense_spectrum(c);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-9);
    }
}

TEST_CASE("exact and floating character transforms agree") {
    int q = 3, d = 3;
    long n = 27;
    // f = indicator of the Hamming connection set.
    auto c = cayley::hamming_connection_set(d, q);
    long nb = 3;
    std::vector<long long> buckets(n * nb, 0);
    std::vector<std::complex<double>> values(n, 0.0);
    for (const auto& v : c.elements) {
        auto code = static_cast<long>(zq::encode(v));
        buckets[code * nb + 0] += 1;
        values[code] += 1.0;
    }
    cayley::character_transform(buckets, q, d, nb);
    cayley::character_transform(values, q, d);
    auto ctx = cyc::context(nb);
    for (long a = 0; a < n; ++a) {
        std::vector<Int> counts(nb);
        for (long j = 0; j < nb; ++j) counts[j] = Int(static_cast<long>(buckets[a * nb + j]));
        auto z = cyc::CycInt::from_buckets(ctx, counts);
        CHECK(std::abs(z.to_complex() - values[a]) < 1e-9);
    }
}
