#pragma once

#include <array>
#include <vector>

#include "qmix/walk.hpp"
#include "qmix/zq.hpp"

namespace qmix::criteria {

/// Earliest uniform mixing time of K_q: pi/4 for q in {2,4}, 2pi/9 for q=3.
walk::WalkTime canonical_time(int q);

/// Necessary condition for mixing at t: |W_dual(e^(iqt), 1)|^2 = |dual|.
/// Exact when t is a rational multiple of 2pi, float (1e-9 relative)
/// otherwise.  The dual enumerator comes from the MacWilliams transform, so
/// only Gamma itself is enumerated.
bool dual_condition(const zq::Submodule& gamma, const walk::WalkTime& t);

/// One row per coset of the per-coset enumerator identity at tau_q:
/// |W_v(zeta, 1)|^2 = |Gamma| with zeta = i (q=2), zeta_3 (q=3), -1 (q=4).
struct CosetReport {
    zq::ZqVector rep;
    Int norm;    // |W_v(zeta,1)|^2, always a rational integer here
    Int target;  // |Gamma|
    bool ok = false;
};

std::vector<CosetReport> coset_condition_report(const zq::Submodule& gamma);

/// True iff every coset passes; equivalent to uniform mixing at tau_q.
bool coset_condition(const zq::Submodule& gamma, int q);

/// q=3 weight-distribution identity for a rank-s module or coset:
/// n0 n1 + n0 n2 + n1 n2 = 3^(2s-1) - 3^(s-1).
bool coset_triple_condition(const zq::WeightClassTriple& counts, int s);

/// m_j = #{gamma in Gamma, wt(gamma) = j (mod 3), 2<c,gamma> = 1 (mod 3)}.
/// This is the weight-change profile with the constant wt(c) term dropped,
/// matching the normalization wt(c) = 0; all zero iff c is orthogonal to
/// Gamma.  When nonzero the counts sum to 3^(s-1).
std::array<Int, 3> weight_change_profile(const zq::Submodule& gamma, const zq::ZqVector& c);

/// H(d,q)/<a> mixes at tau_q iff wt(a) is odd (q=2,4) resp. not divisible
/// by three (q=3).  Requires wt(a) >= 3.
bool one_generator_verdict(const zq::ZqVector& a, int q);

/// H(d,3)/<a,b> mixes at 2pi/9 iff
///   (i)  a.b = 0, wt(a) != 0, wt(b) != 0, or
///   (ii) a.b != 0 and (wt(a) != wt(b) or wt(a) = wt(b) = 0)
/// all mod 3.  Requires rank 2 and minimum distance >= 3.
bool two_generator_verdict(const zq::ZqVector& a, const zq::ZqVector& b);

/// Weight-mod-3 counts in non-descending order.
zq::WeightClassTriple weight_structure(const zq::WeightEnumerator& w);

/// The binary [17,9,5] quadratic-residue code: cyclic code generated by a
/// deterministic degree-8 factor of x^17 - 1 over F_2.
zq::Submodule binary_qr_code_17();

}  // namespace qmix::criteria
