#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qmix/cyclotomic.hpp"
#include "qmix/zq.hpp"

namespace qmix::cayley {

/// Connection set of a Cayley graph on Z_q^d: a set of nonzero, inverse-closed
/// group elements.  Elements are kept sorted for deterministic output.
struct ConnectionSet {
    int q = 2;
    int d = 1;
    std::vector<zq::ZqVector> elements;

    std::uint64_t vertex_count() const;
};

/// Throws std::invalid_argument if 0 is present, some inverse is missing, or
/// shapes are inconsistent.
void validate_connection_set(const ConnectionSet& c);

ConnectionSet make_connection_set(int q, int d, std::vector<std::vector<int>> elements);

/// JSON format: {"q": 3, "d": 2, "elements": [[1,0],[2,0]]}.
ConnectionSet connection_set_from_json(const std::string& text);
std::string connection_set_to_json(const ConnectionSet& c);

/// C is linear when C union {0} is closed under multiplication by Z_q.
bool is_linear(const ConnectionSet& c);

/// True when C generates Z_q^d, i.e. the Cayley graph is connected
/// (rank over F_p equals d for every prime p dividing q).
bool is_connected(const ConnectionSet& c);

/// Nonzero multiples of the standard basis vectors: the Hamming graph H(d,q).
ConnectionSet hamming_connection_set(int d, int q);

/// All words of a fixed Hamming weight r: the distance-r graph of H(d,q).
ConnectionSet distance_connection_set(int d, int q, int r);

/// Union of distance-r graphs over r in classes (each in [1,d]).
ConnectionSet union_connection_set(int d, int q, const std::vector<int>& classes);

/// Connection set of H(d,q)/Gamma on Z_q^(d-rank): nonzero multiples of the
/// parity-check columns.  Requires minimum distance >= 3 so the quotient is a
/// simple graph with valency d(q-1).
ConnectionSet quotient_connection_set(const zq::Submodule& gamma);

/// Exact eigenvalue sum_{c in C} zeta_q^<a,c> as a cyclotomic integer.
cyc::CycInt character_eigenvalue(const ConnectionSet& c, const zq::ZqVector& a);

/// (q |C ∩ a-perp| - |C|) / (q-1): closed form valid for linear sets over
/// prime q (returned as a rational; not generally valid for q = 4).
Rat linear_eigenvalue_formula(const ConnectionSet& c, const zq::ZqVector& a);

/// Eigenvalues for all characters a (indexed by mixed-radix code), verified
/// integral.  Throws std::domain_error if some eigenvalue is not an integer.
std::vector<long long> integer_spectrum(const ConnectionSet& c);

/// In-place character transform over Z_q^d acting on exponent-bucket rows:
/// row a (N buckets) accumulates sum_x f(x) * zeta_N^(rot * <x,a>) where
/// rot = N / q.  Exact integer arithmetic.
void character_transform(std::vector<long long>& buckets, int q, int d, long n_buckets);

/// Same transform over complex values.
void character_transform(std::vector<std::complex<double>>& values, int q, int d);

}  // namespace qmix::cayley
