#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmix/cayley.hpp"
#include "qmix/cyclotomic.hpp"
#include "qmix/zq.hpp"

namespace qmix::walk {

/// Walk time, preferably an exact rational multiple of 2*pi.
///   rational: t = 2*pi * num/den
///   surd:     t = 2*pi * num/(den*sqrt(surd))
///   real:     t = value
struct WalkTime {
    enum class Kind { rational, surd, real };
    Kind kind = Kind::rational;
    Int num = 0;
    Int den = 1;  // den >= 1, gcd(num, den) = 1
    long surd = 1;
    double value = 0;
    std::string text;  // original spelling when parsed from a string

    double seconds() const;
    bool is_zero() const;
};

WalkTime rational_time(Int num, Int den);
WalkTime real_time(double t);
WalkTime surd_time(Int num, Int den, long surd);

/// Accepts "2pi/9", "pi/4", "2pi*5/27", "2pi/sqrt27", "real:0.7255".
WalkTime parse_time(const std::string& s);
std::string render_time(const WalkTime& t);

/// Flatness verdict.  Exact methods report deviation 0 when flat; the float
/// rule marks deviations in [1e-12, 1e-6] as suspect (too close to call
/// without the exact path).
struct MixingVerdict {
    bool flat = false;
    double max_deviation = 0;  // max over entries of | |U_uv|^2 * n - 1 |
    std::string method;
    bool suspect = false;
};

MixingVerdict verdict_from_deviation(double deviation, const std::string& method);

/// First row of q^d U(t) as cyclotomic integers over Z[zeta_N], N = lcm(den, q).
struct ExactRow {
    cyc::ContextPtr ctx;
    int q = 2;
    int d = 1;
    std::vector<cyc::CycInt> entries;  // indexed by zq::encode of the vertex
};

/// Exact path; requires rational time and an integer spectrum.
ExactRow transition_row_exact(const cayley::ConnectionSet& c, const WalkTime& t);

/// Float path: first row of U(t) itself.
std::vector<std::complex<double>> transition_row(const cayley::ConnectionSet& c, double t);

Eigen::MatrixXd adjacency_matrix(const cayley::ConnectionSet& c);

/// exp(itA) by full symmetric eigendecomposition; n capped by caps().dense.
Eigen::MatrixXcd dense_transition(const Eigen::MatrixXd& a, double t);

/// A1 (x) I + I (x) A2.
Eigen::MatrixXd cartesian_product(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2);

/// Cayley dispatch: exact cyclotomic row for rational times, float row
/// otherwise.  Vertex transitivity reduces the check to the first row.
MixingVerdict is_uniform_mixing(const cayley::ConnectionSet& c, const WalkTime& t);

/// Dense oracle over all entries.
MixingVerdict is_uniform_mixing_dense(const Eigen::MatrixXd& a, double t);

/// Column u only.
MixingVerdict is_local_uniform_mixing(const Eigen::MatrixXd& a, double t, int u);

/// q^d U(t)_{0,v} for the quotient walk on H(d,q)/Gamma, via the coset weight
/// enumerator:  e^{-itd} sum_w n_w (e^{iqt}+q-1)^{d-w} (e^{iqt}-1)^w.
cyc::CycInt quotient_amplitude_exact(const zq::Submodule& gamma, const zq::ZqVector& v,
                                     const WalkTime& t);
std::complex<double> quotient_amplitude(const zq::Submodule& gamma, const zq::ZqVector& v,
                                        double t);

/// Flatness of the quotient walk decided coset-by-coset from the closed form.
MixingVerdict quotient_mixing_exact(const zq::Submodule& gamma, const WalkTime& t);

/// q^d U(t)_{0,g} for one representative g of each weight class w, for a
/// distance-class union graph in H(d,q) with eigenvalues theta[s] on the
/// weight-s character sphere.  Uses sum_{wt(a)=s} psi_a(g) = p_s(wt(g)).
std::vector<cyc::CycInt> scheme_transition_class(int d, int q, const std::vector<Int>& theta,
                                                 const WalkTime& t);

/// Flat iff every weight-class amplitude z satisfies z conj(z) = q^d.
MixingVerdict scheme_mixing_exact(int d, int q, const std::vector<Int>& theta, const WalkTime& t);

}  // namespace qmix::walk
