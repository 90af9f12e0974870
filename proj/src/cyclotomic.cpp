#include "qmix/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qmix::poly {

ZPoly trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool is_zero(const ZPoly& p) { return p.empty(); }

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(std::move(r));
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(std::move(r));
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

ZPoly scale(const ZPoly& a, const Int& c) {
    if (c == 0) return {};
    ZPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

ZPoly exact_div(const ZPoly& num, const ZPoly& den) {
    if (is_zero(den)) throw std::invalid_argument("division by zero polynomial");
    if (is_zero(num)) return {};
    if (num.size() < den.size()) throw std::invalid_argument("inexact polynomial division");
    ZPoly rem = num;
    ZPoly q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        Int& lead = rem[i + den.size() - 1];
        if (lead == 0) continue;
        if (!divides(den.back(), lead))
            throw std::invalid_argument("inexact polynomial division");
        q[i] = lead / den.back();
        for (std::size_t j = 0; j < den.size(); ++j) rem[i + j] -= q[i] * den[j];
    }
    if (!is_zero(trim(std::move(rem)))) throw std::invalid_argument("inexact polynomial division");
    return trim(std::move(q));
}

ZPoly mod_monic(ZPoly num, const ZPoly& den) {
    if (den.empty() || den.back() != 1)
        throw std::invalid_argument("mod_monic requires a monic divisor");
    const std::size_t dd = den.size() - 1;
    num = trim(std::move(num));
    while (num.size() > dd) {
        Int lead = num.back();
        std::size_t shift = num.size() - 1 - dd;
        if (lead != 0)
            for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= lead * den[j];
        num.pop_back();
        num = trim(std::move(num));
    }
    return num;
}

Int content(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    if (is_zero(p)) return {};
    Int c = content(p);
    if (p.back() < 0) c = -c;
    ZPoly r = p;
    for (auto& x : r) x /= c;
    return r;
}

ZPoly gcd(ZPoly a, ZPoly b) {
    a = primitive_part(trim(std::move(a)));
    b = primitive_part(trim(std::move(b)));
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    if (a.size() < b.size()) std::swap(a, b);
    while (!is_zero(b)) {
        // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
        ZPoly r = a;
        const Int lc = b.back();
        int da = degree(a), db = degree(b);
        Int mult = int_pow(lc, static_cast<unsigned long>(da - db + 1));
        for (auto& x : r) x *= mult;
        for (int i = da - db; i >= 0; --i) {
            Int coef = r[i + db] / lc;  // exact by construction of the premultiplier
            if (coef == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= coef * b[j];
        }
        r = primitive_part(trim(std::move(r)));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

const ZPoly& cyclotomic_polynomial(long n) {
    static std::map<long, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively
    // without re-locking (plain iterative fill of the cache).
    for (long m = 1; m <= n; ++m) {
        if (cache.count(m) || n % m != 0) continue;
        ZPoly num(m + 1, 0);
        num[0] = -1;
        num[m] = 1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) num = exact_div(num, cache.at(d));
        cache.emplace(m, std::move(num));
    }
    return cache.at(n);
}

Int evaluate(const ZPoly& p, const Int& x) {
    Int acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat evaluate(const std::vector<Rat>& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace qmix::poly

namespace qmix::cyc {

Context::Context(long n) : n_(n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    min_poly_ = poly::cyclotomic_polynomial(n);
    phi_ = poly::degree(min_poly_);
    if (phi_ < 1) {  // N = 1: the field is Q itself
        phi_ = 1;
        min_poly_ = {Int(-1), Int(1)};  // treat as x - 1
    }
    powers_.resize(n_);
    for (long e = 0; e < n_; ++e) {
        poly::ZPoly xe(e + 1, 0);
        xe[e] = 1;
        auto rem = poly::mod_monic(std::move(xe), min_poly_);
        rem.resize(phi_, 0);
        powers_[e] = std::move(rem);
    }
}

ContextPtr context(long n) {
    static std::map<long, ContextPtr> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<Context>(n);
    return slot;
}

CycInt::CycInt(ContextPtr ctx, std::vector<Int> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != ctx_->degree())
        throw std::invalid_argument("coefficient vector has wrong length");
}

CycInt CycInt::zero(ContextPtr ctx) {
    std::vector<Int> c(ctx->degree(), 0);
    return CycInt(std::move(ctx), std::move(c));
}

CycInt CycInt::integer(ContextPtr ctx, Int value) {
    std::vector<Int> c(ctx->degree(), 0);
    c[0] = std::move(value);
    return CycInt(std::move(ctx), std::move(c));
}

CycInt CycInt::unit_root(ContextPtr ctx, long exponent) {
    long e = mod_floor(exponent, ctx->order());
    std::vector<Int> c = ctx->power_basis(e);
    return CycInt(std::move(ctx), std::move(c));
}

CycInt CycInt::from_buckets(ContextPtr ctx, const std::vector<Int>& counts) {
    if (static_cast<long>(counts.size()) != ctx->order())
        throw std::invalid_argument("bucket vector must have length N");
    std::vector<Int> c(ctx->degree(), 0);
    for (long e = 0; e < ctx->order(); ++e) {
        if (counts[e] == 0) continue;
        const auto& pb = ctx->power_basis(e);
        for (long i = 0; i < ctx->degree(); ++i)
            if (pb[i] != 0) c[i] += counts[e] * pb[i];
    }
    return CycInt(std::move(ctx), std::move(c));
}

CycInt CycInt::operator+(const CycInt& o) const {
    CycInt r = *this;
    r += o;
    return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
    CycInt r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    poly::ZPoly prod = poly::mul(poly::trim(c_), poly::trim(o.c_));
    auto rem = poly::mod_monic(std::move(prod), ctx_->minimal_polynomial());
    rem.resize(ctx_->degree(), 0);
    return CycInt(ctx_, std::move(rem));
}

bool CycInt::operator==(const CycInt& o) const { return c_ == o.c_; }

CycInt CycInt::conjugate() const {
    const long n = ctx_->order();
    std::vector<Int> buckets(n, 0);
    for (long j = 0; j < ctx_->degree(); ++j)
        if (c_[j] != 0) buckets[mod_floor(n - j, n)] += c_[j];
    return from_buckets(ctx_, buckets);
}

bool CycInt::is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Int CycInt::to_integer() const {
    if (!is_integer()) throw std::invalid_argument("cyclotomic element is not an integer");
    return c_[0];
}

Int CycInt::norm_squared() const {
    return ((*this) * conjugate()).to_integer();
}

std::complex<double> CycInt::to_complex() const {
    const double tau = 2.0 * std::numbers::pi / double(ctx_->order());
    std::complex<double> acc = 0.0;
    for (long j = 0; j < ctx_->degree(); ++j) {
        if (c_[j] == 0) continue;
        acc += c_[j].get_d() * std::complex<double>(std::cos(tau * j), std::sin(tau * j));
    }
    return acc;
}

}  // namespace qmix::cyc
