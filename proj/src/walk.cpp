#include "qmix/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <regex>
#include <stdexcept>

#include "qmix/config.hpp"
#include "qmix/scheme.hpp"

namespace qmix::walk {

namespace {

constexpr double kFlatTolerance = 1e-9;
constexpr double kSuspectLow = 1e-12;
constexpr double kSuspectHigh = 1e-6;

long to_long_checked(const Int& n, const char* what) {
    if (!n.fits_slong_p()) throw std::invalid_argument(std::string(what) + " too large");
    return n.get_si();
}

/// N = lcm(den, q) for the cyclotomic ring holding e^(it*theta) and psi values.
long ring_order(const WalkTime& t, int q) {
    long den = to_long_checked(t.den, "time denominator");
    return std::lcm(den, long(q));
}

long phase_exponent(const Int& theta, const Int& num, long den, long n) {
    // theta * num * (n/den) mod n, kept in [0, n).
    Int e = mod_floor(theta * num, Int(n)) * (n / den);
    return to_long_checked(mod_floor(e, Int(n)), "phase exponent");
}

double column_deviation(const Eigen::MatrixXcd& u, int col) {
    const double n = double(u.rows());
    double dev = 0;
    for (Eigen::Index v = 0; v < u.rows(); ++v)
        dev = std::max(dev, std::abs(std::norm(u(v, col)) * n - 1.0));
    return dev;
}

}  // namespace

double WalkTime::seconds() const {
    switch (kind) {
        case Kind::real:
            return value;
        case Kind::rational:
            return 2.0 * std::numbers::pi * Rat(num, den).get_d();
        case Kind::surd:
            return 2.0 * std::numbers::pi * Rat(num, den).get_d() / std::sqrt(double(surd));
    }
    return 0;
}

bool WalkTime::is_zero() const {
    return kind == Kind::real ? value == 0 : num == 0;
}

WalkTime rational_time(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("time: zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    WalkTime t;
    t.kind = WalkTime::Kind::rational;
    t.num = std::move(num);
    t.den = std::move(den);
    return t;
}

WalkTime real_time(double v) {
    WalkTime t;
    t.kind = WalkTime::Kind::real;
    t.value = v;
    return t;
}

WalkTime surd_time(Int num, Int den, long surd) {
    if (surd < 1) throw std::invalid_argument("time: sqrt argument must be positive");
    WalkTime t = rational_time(std::move(num), std::move(den));
    long root = std::lround(std::sqrt(double(surd)));
    while (root * root > surd) --root;
    if (root * root == surd) {
        t.den *= root;
        t = rational_time(t.num, t.den);
    } else {
        t.kind = WalkTime::Kind::surd;
        t.surd = surd;
    }
    return t;
}

WalkTime parse_time(const std::string& s) {
    WalkTime t;
    if (s.rfind("real:", 0) == 0) {
        std::size_t used = 0;
        double v = std::stod(s.substr(5), &used);
        if (5 + used != s.size()) throw std::invalid_argument("time: trailing junk in '" + s + "'");
        t = real_time(v);
    } else {
        static const std::regex form(R"(^(2pi|pi)(?:\*([0-9]+))?(?:/(sqrt)?([0-9]+))?$)");
        std::smatch m;
        if (!std::regex_match(s, m, form))
            throw std::invalid_argument("time: unrecognized syntax '" + s + "'");
        Int num = 1, den = m[1] == "pi" ? 2 : 1;
        if (m[2].matched) num *= Int(m[2].str());
        long surd = 1;
        if (m[4].matched) {
            Int divisor(m[4].str());
            if (divisor == 0) throw std::invalid_argument("time: zero denominator in '" + s + "'");
            if (m[3].matched)
                surd = to_long_checked(divisor, "sqrt argument");
            else
                den *= divisor;
        }
        t = surd == 1 ? rational_time(num, den) : surd_time(num, den, surd);
    }
    t.text = s;
    return t;
}

std::string render_time(const WalkTime& t) {
    if (!t.text.empty()) return t.text;
    switch (t.kind) {
        case WalkTime::Kind::real: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "real:%.17g", t.value);
            return buf;
        }
        case WalkTime::Kind::rational:
            if (t.den == 1) return t.num == 1 ? "2pi" : "2pi*" + to_string(t.num);
            if (t.num == 1) return "2pi/" + to_string(t.den);
            return "2pi*" + to_string(t.num) + "/" + to_string(t.den);
        case WalkTime::Kind::surd: {
            Int folded = Int(t.surd) * t.den * t.den;
            std::string head = t.num == 1 ? "2pi" : "2pi*" + to_string(t.num);
            return head + "/sqrt" + to_string(folded);
        }
    }
    return {};
}

MixingVerdict verdict_from_deviation(double deviation, const std::string& method) {
    MixingVerdict v;
    v.flat = deviation <= kFlatTolerance;
    v.max_deviation = deviation;
    v.method = method;
    v.suspect = deviation >= kSuspectLow && deviation <= kSuspectHigh;
    return v;
}

ExactRow transition_row_exact(const cayley::ConnectionSet& c, const WalkTime& t) {
    if (t.kind != WalkTime::Kind::rational)
        throw std::invalid_argument("exact row: time must be a rational multiple of 2pi");
    const std::vector<long long> theta = cayley::integer_spectrum(c);
    const std::uint64_t n = theta.size();
    const long N = ring_order(t, c.q);
    const long den = to_long_checked(t.den, "time denominator");
    if (n * std::uint64_t(N) > (std::uint64_t(1) << 27))
        throw CapExceeded("exact row: bucket table exceeds memory cap");
    std::vector<long long> buckets(n * std::uint64_t(N), 0);
    for (std::uint64_t a = 0; a < n; ++a)
        buckets[a * N + phase_exponent(Int(static_cast<long>(theta[a])), t.num, den, N)] = 1;
    cayley::character_transform(buckets, c.q, c.d, N);
    ExactRow row;
    row.ctx = cyc::context(N);
    row.q = c.q;
    row.d = c.d;
    row.entries.reserve(n);
    std::vector<Int> counts(N);
    for (std::uint64_t g = 0; g < n; ++g) {
        for (long j = 0; j < N; ++j) counts[j] = static_cast<long>(buckets[g * N + j]);
        row.entries.push_back(cyc::CycInt::from_buckets(row.ctx, counts));
    }
    return row;
}

std::vector<std::complex<double>> transition_row(const cayley::ConnectionSet& c, double t) {
    const std::vector<long long> theta = cayley::integer_spectrum(c);
    std::vector<std::complex<double>> values(theta.size());
    for (std::size_t a = 0; a < theta.size(); ++a) {
        double ang = double(theta[a]) * t;
        values[a] = {std::cos(ang), std::sin(ang)};
    }
    cayley::character_transform(values, c.q, c.d);
    const double scale = 1.0 / double(c.vertex_count());
    for (auto& v : values) v *= scale;
    return values;
}

Eigen::MatrixXd adjacency_matrix(const cayley::ConnectionSet& c) {
    const std::uint64_t n = c.vertex_count();
    if (n > caps().dense) throw CapExceeded("adjacency: vertex count exceeds dense cap");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::uint64_t u = 0; u < n; ++u) {
        zq::ZqVector uv = zq::decode(c.q, c.d, u);
        for (const auto& e : c.elements) a(u, zq::encode(zq::add(uv, e))) = 1.0;
    }
    return a;
}

Eigen::MatrixXcd dense_transition(const Eigen::MatrixXd& a, double t) {
    if (a.rows() != a.cols()) throw std::invalid_argument("dense walk: matrix not square");
    if (std::uint64_t(a.rows()) > caps().dense)
        throw CapExceeded("dense walk: size exceeds dense cap");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("dense walk: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense walk: eigensolver failed");
    Eigen::VectorXcd phases(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        double ang = es.eigenvalues()(i) * t;
        phases(i) = {std::cos(ang), std::sin(ang)};
    }
    Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
    return v * phases.asDiagonal() * v.transpose();
}

Eigen::MatrixXd cartesian_product(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
    if (a1.rows() != a1.cols() || a2.rows() != a2.cols())
        throw std::invalid_argument("cartesian product: matrices must be square");
    const Eigen::Index n1 = a1.rows(), n2 = a2.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 * n2, n1 * n2);
    for (Eigen::Index i = 0; i < n1; ++i)
        for (Eigen::Index j = 0; j < n1; ++j)
            if (a1(i, j) != 0)
                for (Eigen::Index k = 0; k < n2; ++k) a(i * n2 + k, j * n2 + k) += a1(i, j);
    for (Eigen::Index k = 0; k < n2; ++k)
        for (Eigen::Index l = 0; l < n2; ++l)
            if (a2(k, l) != 0)
                for (Eigen::Index i = 0; i < n1; ++i) a(i * n2 + k, i * n2 + l) += a2(k, l);
    return a;
}

MixingVerdict is_uniform_mixing(const cayley::ConnectionSet& c, const WalkTime& t) {
    const bool exact_feasible = t.kind == WalkTime::Kind::rational && t.den.fits_slong_p() &&
                                ring_order(t, c.q) <= 4096;
    if (exact_feasible && c.vertex_count() <= caps().enumeration) {
        ExactRow row = transition_row_exact(c, t);
        const Int target = int_pow(c.q, c.d);
        const cyc::CycInt flat_norm = cyc::CycInt::integer(row.ctx, target);
        MixingVerdict v;
        v.method = "character-sum";
        v.flat = true;
        double dev = 0;
        const double n = double(c.vertex_count());
        for (const auto& z : row.entries) {
            if (z * z.conjugate() == flat_norm) continue;
            v.flat = false;
            dev = std::max(dev, std::abs(std::norm(z.to_complex()) / (n * n) * n - 1.0));
        }
        v.max_deviation = v.flat ? 0.0 : dev;
        return v;
    }
    std::vector<std::complex<double>> row = transition_row(c, t.seconds());
    const double n = double(row.size());
    double dev = 0;
    for (const auto& u : row) dev = std::max(dev, std::abs(std::norm(u) * n - 1.0));
    return verdict_from_deviation(dev, "character-sum-float");
}

MixingVerdict is_uniform_mixing_dense(const Eigen::MatrixXd& a, double t) {
    Eigen::MatrixXcd u = dense_transition(a, t);
    double dev = 0;
    for (Eigen::Index col = 0; col < u.cols(); ++col)
        dev = std::max(dev, column_deviation(u, col));
    return verdict_from_deviation(dev, "dense-oracle");
}

MixingVerdict is_local_uniform_mixing(const Eigen::MatrixXd& a, double t, int u) {
    Eigen::MatrixXcd m = dense_transition(a, t);
    if (u < 0 || u >= m.cols()) throw std::out_of_range("local mixing: vertex out of range");
    return verdict_from_deviation(column_deviation(m, u), "dense-oracle");
}

namespace {

/// Shared pieces of the quotient closed form at rational t: powers of
/// A = e^(iqt)+q-1 and B = e^(iqt)-1, and the e^(-itd) prefactor.
struct QuotientKernel {
    cyc::ContextPtr ctx;
    std::vector<cyc::CycInt> apow, bpow;
    cyc::CycInt prefactor;
    int d;

    QuotientKernel(int q, int d_, const WalkTime& t) : d(d_) {
        if (t.kind != WalkTime::Kind::rational)
            throw std::invalid_argument("quotient walk: time must be a rational multiple of 2pi");
        const long N = ring_order(t, q);
        const long den = to_long_checked(t.den, "time denominator");
        ctx = cyc::context(N);
        cyc::CycInt z = cyc::CycInt::unit_root(ctx, phase_exponent(Int(q), t.num, den, N));
        cyc::CycInt a = z + cyc::CycInt::integer(ctx, q - 1);
        cyc::CycInt b = z - cyc::CycInt::integer(ctx, 1);
        apow.assign(1, cyc::CycInt::integer(ctx, 1));
        bpow.assign(1, cyc::CycInt::integer(ctx, 1));
        for (int i = 1; i <= d; ++i) {
            apow.push_back(apow.back() * a);
            bpow.push_back(bpow.back() * b);
        }
        prefactor = cyc::CycInt::unit_root(ctx, phase_exponent(Int(-d), t.num, den, N));
    }

    /// q^d U(t)_{0,v} from the coset weight counts.
    cyc::CycInt amplitude(const zq::WeightEnumerator& w) const {
        cyc::CycInt acc = cyc::CycInt::zero(ctx);
        for (int i = 0; i <= d; ++i) {
            if (w.counts[i] == 0) continue;
            acc += cyc::CycInt::integer(ctx, w.counts[i]) * apow[d - i] * bpow[i];
        }
        return acc * prefactor;
    }
};

}  // namespace

cyc::CycInt quotient_amplitude_exact(const zq::Submodule& gamma, const zq::ZqVector& v,
                                     const WalkTime& t) {
    std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
    QuotientKernel kernel(gamma.q, gamma.d, t);
    return kernel.amplitude(zq::coset_weight_enumerator(elems, v));
}

std::complex<double> quotient_amplitude(const zq::Submodule& gamma, const zq::ZqVector& v,
                                        double t) {
    std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
    zq::WeightEnumerator w = zq::coset_weight_enumerator(elems, v);
    const int q = gamma.q, d = gamma.d;
    const std::complex<double> z = std::polar(1.0, q * t);
    const std::complex<double> a = z + double(q - 1), b = z - 1.0;
    std::complex<double> acc = 0;
    for (int i = 0; i <= d; ++i) {
        if (w.counts[i] == 0) continue;
        acc += w.counts[i].get_d() * std::pow(a, d - i) * std::pow(b, i);
    }
    return acc * std::polar(1.0, -t * d);
}

MixingVerdict quotient_mixing_exact(const zq::Submodule& gamma, const WalkTime& t) {
    std::vector<zq::ZqVector> elems = zq::enumerate_submodule(gamma);
    QuotientKernel kernel(gamma.q, gamma.d, t);
    // Flat means |U_{0v}|^2 = |Gamma| / q^d at every coset, so the scaled
    // amplitude must satisfy |q^d U_{0v}|^2 = q^d |Gamma|.  Using |Gamma|
    // rather than q^rank also covers non-free submodules over Z_4.
    const Int target = int_pow(gamma.q, gamma.d) * Int(elems.size());
    const cyc::CycInt flat_norm = cyc::CycInt::integer(kernel.ctx, target);
    const double cells = std::pow(double(gamma.q), gamma.d) / double(elems.size());
    const double scale = std::pow(double(gamma.q), 2 * gamma.d);
    MixingVerdict v;
    v.method = "closed-form";
    v.flat = true;
    double dev = 0;
    for (const auto& rep : zq::coset_transversal(gamma)) {
        cyc::CycInt z = kernel.amplitude(zq::coset_weight_enumerator(elems, rep));
        if (z * z.conjugate() == flat_norm) continue;
        v.flat = false;
        dev = std::max(dev, std::abs(std::norm(z.to_complex()) / scale * cells - 1.0));
    }
    v.max_deviation = v.flat ? 0.0 : dev;
    return v;
}

std::vector<cyc::CycInt> scheme_transition_class(int d, int q, const std::vector<Int>& theta,
                                                 const WalkTime& t) {
    if (t.kind != WalkTime::Kind::rational)
        throw std::invalid_argument("scheme walk: time must be a rational multiple of 2pi");
    if (theta.size() != std::size_t(d) + 1)
        throw std::invalid_argument("scheme walk: eigenvalue list must have d+1 entries");
    const long N = ring_order(t, q);
    const long den = to_long_checked(t.den, "time denominator");
    cyc::ContextPtr ctx = cyc::context(N);
    scheme::KrawtchoukTable tab = scheme::krawtchouk_table(d, q);
    std::vector<long> exponent(d + 1);
    for (int s = 0; s <= d; ++s) exponent[s] = phase_exponent(theta[s], t.num, den, N);
    std::vector<cyc::CycInt> out;
    out.reserve(d + 1);
    std::vector<Int> counts(N);
    for (int w = 0; w <= d; ++w) {
        std::fill(counts.begin(), counts.end(), Int(0));
        for (int s = 0; s <= d; ++s) counts[exponent[s]] += tab(w, s);
        out.push_back(cyc::CycInt::from_buckets(ctx, counts));
    }
    return out;
}

MixingVerdict scheme_mixing_exact(int d, int q, const std::vector<Int>& theta, const WalkTime& t) {
    std::vector<cyc::CycInt> classes = scheme_transition_class(d, q, theta, t);
    const Int target = int_pow(q, d);
    const cyc::CycInt flat_norm = cyc::CycInt::integer(classes.front().context(), target);
    MixingVerdict v;
    v.method = "scheme-class";
    v.flat = true;
    double dev = 0;
    const double n = std::pow(double(q), d);
    for (const auto& z : classes) {
        if (z * z.conjugate() == flat_norm) continue;
        v.flat = false;
        dev = std::max(dev, std::abs(std::norm(z.to_complex()) / n - 1.0));
    }
    v.max_deviation = v.flat ? 0.0 : dev;
    return v;
}

}  // namespace qmix::walk
