#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmix/ints.hpp"

namespace qmix::zq {

/// Element of Z_q^d with coordinates normalized to [0, q).
struct ZqVector {
    int q = 2;
    std::vector<int> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    bool operator==(const ZqVector& o) const = default;
};

ZqVector make_vector(int q, std::vector<int> coords);
ZqVector zero_vector(int q, int d);

/// Parses "1,2,0" with modulus q; inverse of render_vector.
ZqVector parse_vector(int q, const std::string& text);
std::string render_vector(const ZqVector& v);

int hamming_weight(const ZqVector& v);
int inner_product(const ZqVector& a, const ZqVector& b);

ZqVector add(const ZqVector& a, const ZqVector& b);
ZqVector negate(const ZqVector& a);
ZqVector scale(int lambda, const ZqVector& a);

/// Submodule of Z_q^d given by a generating set (columns of the generator
/// matrix).  q must be prime or 4; for q = 4 only submodules admitting a
/// unit-pivot systematic form are supported.
struct Submodule {
    int q = 2;
    int d = 1;
    std::vector<ZqVector> generators;
};

Submodule make_submodule(int q, int d, std::vector<std::vector<int>> gens);

/// Reads one generator per line in "1,2,0" form.
Submodule parse_generator_lines(int q, const std::string& text);

/// All elements, deduplicated and sorted; throws CapExceeded past the cap.
std::vector<ZqVector> enumerate_submodule(const Submodule& s);

Int submodule_size(const Submodule& s);

/// Rank of the generator matrix: dimension over Z_q for prime q, number of
/// unit pivots for q = 4 (throws if a dependent-but-nonzero generator has no
/// unit coordinate, i.e. the submodule is not free).
int rank(const Submodule& s);

/// Minimum Hamming weight over nonzero elements; throws on the zero module.
int minimum_distance(const Submodule& s);

/// counts[w] = number of elements of Hamming weight w, w = 0..d.
struct WeightEnumerator {
    int q = 2;
    int d = 1;
    std::vector<Int> counts;

    Int total() const;
    bool operator==(const WeightEnumerator& o) const = default;
};

WeightEnumerator weight_enumerator(int q, int d, const std::vector<ZqVector>& elements);
WeightEnumerator weight_enumerator(const Submodule& s);

/// Weight enumerator of the coset rep + Gamma, reusing precomputed elements.
WeightEnumerator coset_weight_enumerator(const std::vector<ZqVector>& gamma,
                                         const ZqVector& rep);

/// Dual weight enumerator via W'(x,y) = (1/|Gamma|) W(x+(q-1)y, x-y).
/// Throws if any resulting coefficient is non-integral or negative.
WeightEnumerator macwilliams_transform(const WeightEnumerator& w, const Int& subgroup_size);

/// (n0, n1, n2): element counts by Hamming weight mod 3.
using WeightClassTriple = std::array<Int, 3>;
WeightClassTriple weight_class_triple(const WeightEnumerator& w);

/// Parity-check data in systematic form.  Coordinates are permuted so the
/// bottom rank x rank block of the generator matrix is invertible; then
/// Q = (I | -R S^{-1}) has (d - rank) rows and satisfies Q M = 0.
/// row_perm[i] = original coordinate index at permuted position i.
struct SystematicForm {
    int q = 2;
    int d = 1;
    int rank = 0;
    std::vector<std::vector<int>> Q;  // (d - rank) rows, d columns, permuted frame
    std::vector<int> row_perm;
};

SystematicForm parity_check_matrix(const Submodule& s);

/// Q with columns restored to the original coordinate order.
std::vector<std::vector<int>> parity_check_original_order(const SystematicForm& f);

/// Generators of the dual module Gamma^perp (rows of Q, original order).
Submodule dual_submodule(const Submodule& s);

/// Deterministic coset representatives: one per syndrome, built by placing
/// the syndrome on the identity block of the systematic form.
std::vector<ZqVector> coset_transversal(const Submodule& s);

/// Encodes coords in mixed radix q (requires q^d < 2^63).
std::uint64_t encode(const ZqVector& v);
ZqVector decode(int q, int d, std::uint64_t code);

}  // namespace qmix::zq
