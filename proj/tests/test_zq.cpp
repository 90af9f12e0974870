#include "doctest.h"

#include "qmix/zq.hpp"

#include <algorithm>
#include <set>

using namespace qmix;
using zq::ZqVector;

TEST_CASE("vector parse and render round trip") {
    auto v = zq::parse_vector(3, "1,0,2,2");
    CHECK(v.q == 3);
    CHECK(v.coords == std::vector<int>{1, 0, 2, 2});
    CHECK(zq::render_vector(v) == "1,0,2,2");
    // Components are reduced mod q, matching make_vector.
    CHECK(zq::parse_vector(3, "1,3,-1").coords == std::vector<int>{1, 0, 2});
    // Any modulus is accepted at the vector level (q = 5, 7 appear in probes).
    CHECK(zq::parse_vector(5, "1,2").coords == std::vector<int>{1, 2});
    CHECK_THROWS(zq::parse_vector(3, ""));
    CHECK_THROWS(zq::parse_vector(3, "1,x,0"));
}

TEST_CASE("make_vector reduces mod q") {
    auto v = zq::make_vector(3, {4, -1, 6});
    CHECK(v.coords == std::vector<int>{1, 2, 0});
}

TEST_CASE("hamming weight and inner product") {
    auto a = zq::make_vector(3, {1, 0, 2, 1});
    auto b = zq::make_vector(3, {2, 1, 1, 0});
    CHECK(zq::hamming_weight(a) == 3);
    CHECK(zq::hamming_weight(zq::zero_vector(3, 4)) == 0);
    // <a,b> = 2 + 0 + 2 + 0 = 4 = 1 mod 3
    CHECK(zq::inner_product(a, b) == 1);
    CHECK(zq::inner_product(a, zq::zero_vector(3, 4)) == 0);
}

TEST_CASE("vector arithmetic stays reduced") {
    auto a = zq::make_vector(4, {3, 2, 1});
    auto b = zq::make_vector(4, {2, 3, 3});
    auto s = zq::add(a, b);
    CHECK(s.coords == std::vector<int>{1, 1, 0});
    CHECK(zq::add(a, zq::negate(a)).coords == std::vector<int>{0, 0, 0});
    CHECK(zq::scale(2, a).coords == std::vector<int>{2, 0, 2});
}

TEST_CASE("submodule enumeration sizes") {
    // Free rank-1 submodules have q elements; rank-2 have q^2.
    auto g1 = zq::make_submodule(3, 4, {{1, 1, 1, 1}});
    CHECK(zq::enumerate_submodule(g1).size() == 3);
    CHECK(zq::submodule_size(g1) == Int(3));

    auto g2 = zq::make_submodule(3, 5,
                                 {{1, 1, 1, 0, 0},
                                  {0, 0, 1, 1, 1}});
    CHECK(zq::enumerate_submodule(g2).size() == 9);
    CHECK(zq::rank(g2) == 2);

    // Over Z_4 a generator of order 2 spans a non-free submodule.
    auto g3 = zq::make_submodule(4, 3, {{2, 2, 2}});
    CHECK(zq::enumerate_submodule(g3).size() == 2);

    auto g4 = zq::make_submodule(4, 3, {{1, 1, 1}});
    CHECK(zq::enumerate_submodule(g4).size() == 4);
}

TEST_CASE("submodule enumeration deduplicates dependent generators") {
    auto g = zq::make_submodule(3, 4,
                                {{1, 1, 1, 0},
                                 {2, 2, 2, 0}});
    CHECK(zq::enumerate_submodule(g).size() == 3);
}

TEST_CASE("minimum distance") {
    auto g = zq::make_submodule(2, 5, {{1, 1, 1, 1, 1}});
    CHECK(zq::minimum_distance(g) == 5);

    auto h = zq::make_submodule(3, 4,
                                {{1, 1, 1, 0},
                                 {0, 1, 2, 1}});
    // Nonzero elements: weights of all 8 combinations; min is 3.
    CHECK(zq::minimum_distance(h) == 3);

    CHECK_THROWS(zq::minimum_distance(zq::make_submodule(3, 4, {})));
}

TEST_CASE("weight enumerator counts") {
    auto g = zq::make_submodule(3, 4, {{1, 1, 1, 1}});
    auto w = zq::weight_enumerator(g);
    CHECK(w.counts.size() == 5);
    CHECK(w.counts[0] == Int(1));
    CHECK(w.counts[4] == Int(2));
    CHECK(w.counts[1] == Int(0));
    CHECK(w.total() == Int(3));
}

TEST_CASE("coset weight enumerator shifts the cell") {
    auto g = zq::make_submodule(2, 4, {{1, 1, 1, 1}});
    auto rep = zq::make_vector(2, {1, 0, 0, 0});
    auto w = zq::coset_weight_enumerator(zq::enumerate_submodule(g), rep);
    // Coset {1000, 0111}: weights 1 and 3.
    CHECK(w.counts[1] == Int(1));
    CHECK(w.counts[3] == Int(1));
    CHECK(w.total() == Int(2));
}

TEST_CASE("macwilliams transform matches enumeration of the dual") {
    struct Case {
        int q, d;
        std::vector<std::vector<int>> gens;
    };
    std::vector<Case> cases = {
        {2, 5, {{1, 1, 1, 1, 1}}},
        {2, 6, {{1, 1, 1, 0, 0, 0}, {0, 0, 1, 1, 1, 1}}},
        {3, 4, {{1, 1, 1, 1}}},
        {3, 5, {{1, 1, 1, 0, 0}, {0, 1, 2, 1, 1}}},
        {4, 3, {{1, 1, 1}}},
        {4, 4, {{1, 1, 1, 0}, {0, 1, 2, 1}}},
    };
    for (const auto& c : cases) {
        auto gamma = zq::make_submodule(c.q, c.d, c.gens);
        auto w = zq::weight_enumerator(gamma);
        auto dual = zq::dual_submodule(gamma);
        auto wd = zq::weight_enumerator(dual);
        auto transformed = zq::macwilliams_transform(w, w.total());
        REQUIRE(transformed.counts.size() == wd.counts.size());
        for (std::size_t i = 0; i < wd.counts.size(); ++i)
            CHECK(transformed.counts[i] == wd.counts[i]);

        // Applying the transform twice recovers the original enumerator.
        auto back = zq::macwilliams_transform(transformed, wd.total());
        for (std::size_t i = 0; i < w.counts.size(); ++i)
            CHECK(back.counts[i] == w.counts[i]);
    }
}

TEST_CASE("dual submodule size complements the primal") {
    auto g = zq::make_submodule(3, 5,
                                {{1, 1, 1, 0, 0},
                                 {0, 0, 1, 1, 1}});
    auto dual = zq::dual_submodule(g);
    CHECK(zq::submodule_size(g) * zq::submodule_size(dual) == Int(243));
    // Every dual element is orthogonal to every generator.
    for (const auto& x : zq::enumerate_submodule(dual))
        for (const auto& gen : g.generators)
            CHECK(zq::inner_product(x, gen) == 0);
}

TEST_CASE("non-free submodules over Z4 enumerate but expose no dual") {
    // Systematic-form operations need a unit pivot; 2-torsion submodules
    // enumerate fine but dual/parity-check computations are rejected.
    auto g = zq::make_submodule(4, 2, {{2, 0}});
    CHECK(zq::enumerate_submodule(g).size() == 2);
    CHECK_THROWS(zq::dual_submodule(g));
    CHECK_THROWS(zq::parity_check_matrix(g));
}

TEST_CASE("parity check annihilates the submodule") {
    auto g = zq::make_submodule(3, 5,
                                {{1, 0, 2, 1, 1},
                                 {0, 1, 1, 2, 0}});
    auto sys = zq::parity_check_matrix(g);
    auto rows = zq::parity_check_original_order(sys);
    CHECK(rows.size() == 3);
    for (const auto& x : zq::enumerate_submodule(g))
        for (const auto& row : rows)
            CHECK(zq::inner_product(zq::make_vector(3, row), x) == 0);
}

TEST_CASE("coset transversal partitions the ambient space") {
    auto g = zq::make_submodule(3, 4, {{1, 1, 1, 1}});
    auto reps = zq::coset_transversal(g);
    CHECK(reps.size() == 27);
    auto elems = zq::enumerate_submodule(g);
    std::set<unsigned long long> seen;
    for (const auto& r : reps)
        for (const auto& e : elems)
            seen.insert(zq::encode(zq::add(r, e)));
    CHECK(seen.size() == 81);
}

TEST_CASE("encode decode round trip") {
    for (int q : {2, 3, 4}) {
        auto v = zq::make_vector(q, {1, 0, q - 1, 1});
        CHECK(zq::decode(q, 4, zq::encode(v)).coords == v.coords);
    }
}

TEST_CASE("weight class triple partitions by residue") {
    auto g = zq::make_submodule(3, 4, {{1, 1, 1, 1}});
    auto w = zq::weight_enumerator(g);
    auto triple = zq::weight_class_triple(w);
    // Weights are 0, 4, 4: residues 0, 1, 1.
    CHECK(triple[0] == Int(1));
    CHECK(triple[1] == Int(2));
    CHECK(triple[2] == Int(0));
}

TEST_CASE("generator file parsing") {
    auto sub = zq::parse_generator_lines(3, "1,1,1,0,0\n# comment\n\n0,0,1,1,1\n");
    CHECK(sub.generators.size() == 2);
    CHECK(sub.generators[1].coords == std::vector<int>{0, 0, 1, 1, 1});
    CHECK_THROWS(zq::parse_generator_lines(3, "1,1\n1,1,1\n"));
}
