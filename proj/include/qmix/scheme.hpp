#pragma once

#include <vector>

#include "qmix/ints.hpp"

namespace qmix::scheme {

/// Eigenvalue matrix of the Hamming scheme H(d,q):
/// p[s][r] = p_r(s) = [x^r] (1+(q-1)x)^(d-s) (1-x)^s.
struct KrawtchoukTable {
    int d = 0;
    int q = 2;
    std::vector<std::vector<Int>> p;

    const Int& operator()(int s, int r) const { return p[s][r]; }
};

/// Generating-function route.
KrawtchoukTable krawtchouk_table(int d, int q);

/// Closed-sum route: sum_h (-q)^h (q-1)^(r-h) binom(d-h,r-h) binom(s,h).
Int krawtchouk_sum(int d, int q, int r, int s);

struct RecurrenceReport {
    bool contiguous = false;     // p_r(s) - p_r(s-1) + (q-1)p_{r-1}(s) + p_{r-1}(s-1) = 0
    bool dimension = false;      // p_r over d+1 minus shifted = q * p_{r-1} over d
    bool four_term_q2 = false;   // q=2 double-step identity (vacuously true otherwise)
    bool matrix_form = false;    // row-difference/column-shift matrix identity
    bool all() const { return contiguous && dimension && four_term_q2 && matrix_form; }
};

RecurrenceReport verify_recurrences(int d, int q);

/// Union of distance classes (subset of [1,d]) in H(d,q).
struct SchemeGraphSpec {
    int d = 1;
    int q = 2;
    std::vector<int> classes;
};

void validate_scheme_spec(const SchemeGraphSpec& spec);

/// theta[s] = sum over r in classes of p_r(s).
std::vector<Int> scheme_eigenvalues(const SchemeGraphSpec& spec);

struct CongruenceResult {
    bool satisfied = false;
    int epsilon = 0;  // +1 or -1 when a sign is part of the condition, else 0
};

/// Eigenvalue congruences sufficient for mixing at 2pi/3^k (q=3) or pi/2^k
/// (q=2,4), k >= 2:
///   q=2: theta_s - theta_0 = eps 2^(k-1) s  (mod 2^(k+1))
///   q=3: theta_s - theta_0 = eps 3^(k-1) s  (mod 3^k)
///   q=4: theta_s - theta_0 = 2^k s          (mod 2^(k+1))
CongruenceResult theta_congruence_condition(const std::vector<Int>& theta, int q, int k);

/// Sufficient condition on the class indicator a (a_r = 1 iff r in classes):
/// every entry of P^(d-1) a must satisfy
///   q=2: = eps 2^(k-2)  (mod 2^k)
///   q=3: = eps 3^(k-2)  (mod 3^(k-1))
///   q=4: = 2^(k-2)      (mod 2^(k-1))
/// Implies the theta congruence above for the union graph.
CongruenceResult scheme_graph_condition(const SchemeGraphSpec& spec, int k);

/// Single distance class X_r in H(d,3): mixing at 2pi/3^k when
///   (i)  2^(r-1) binom(d-1,r-1) = eps 3^(k-2)  (mod 3^(k-1))
///   (ii) 3^(k-h-1) divides binom(d-h-1,r-h-1) for h = 1..k-2.
/// The same conditions cover X_{d-r+1}.
CongruenceResult distance_family_condition_q3(int d, int r, int k);

/// Single distance class X_r in H(d,4): mixing at pi/2^k when
///   (i)  3^(r-1) binom(d-1,r-1) = 2^(k-2)  (mod 2^(k-1))
///   (ii) 2^(k-2h-1) divides binom(d-h-1,r-h-1) for h = 1..floor(k/2)-1.
bool distance_family_condition_q4(int d, int r, int k);

/// Carries when adding m and n-m in base p; equals the p-adic valuation of
/// binom(n,m).
int kummer_carries(const Int& n, const Int& m, int p);

struct FamilyInstance {
    int q = 3;
    int d = 1;
    int r = 1;
    int k = 2;  // time 2pi/3^k (q=3) or pi/2^k (q=4)
    bool condition = false;
};

/// The faster-mixing distance-graph families:
///   q=3: H(2*3^k-9, 3), r in {3^k-1, 3^k-4, 3^k-7}, time 2pi/3^k
///   q=4: H(2^(k-1)-1, 4) with r = 2^(k-2), and
///        H(2^k-2, 4) with r in {2^(k-1)-1, 2^(k-1)}, time pi/2^k
/// for 2 <= k <= k_max, each annotated with its condition check.
std::vector<FamilyInstance> enumerate_families(int k_max, int q);

/// Union of classes r = i (mod 3), r in [1,d], in H(d,3) with d = 2k+1,
/// plus the eigenvalue list.  The identity class is never included.
struct UnionClassGraph {
    SchemeGraphSpec spec;
    std::vector<Int> theta;
};

UnionClassGraph union_class_graph(int k, int i);
/// Same classes over an explicit ambient d (for probing nearby dimensions).
UnionClassGraph union_class_graph_dim(int d, int i);

}  // namespace qmix::scheme
