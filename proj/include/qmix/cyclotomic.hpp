#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "qmix/ints.hpp"
#include "qmix/polynomial.hpp"

namespace qmix::cyc {

/// Shared data for arithmetic in Z[x]/Phi_N(x), the ring of integers of the
/// N-th cyclotomic field.  Immutable after construction; safe to share
/// across threads.
class Context {
  public:
    explicit Context(long n);

    long order() const { return n_; }
    long degree() const { return phi_; }
    const poly::ZPoly& minimal_polynomial() const { return min_poly_; }

    /// x^e mod Phi_N for e in [0, N).
    const std::vector<Int>& power_basis(long e) const { return powers_[e]; }

  private:
    long n_;
    long phi_;
    poly::ZPoly min_poly_;
    std::vector<std::vector<Int>> powers_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// Context cache keyed by N.
ContextPtr context(long n);

/// Element of Z[zeta_N] in the power basis 1, zeta, ..., zeta^(phi(N)-1).
class CycInt {
  public:
    CycInt() = default;
    CycInt(ContextPtr ctx, std::vector<Int> coeffs);

    static CycInt zero(ContextPtr ctx);
    static CycInt integer(ContextPtr ctx, Int value);
    static CycInt unit_root(ContextPtr ctx, long exponent);
    /// Sum of counts[e] * zeta^e over exponent buckets (size N).
    static CycInt from_buckets(ContextPtr ctx, const std::vector<Int>& counts);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Int>& coeffs() const { return c_; }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt& operator+=(const CycInt& o);
    bool operator==(const CycInt& o) const;

    CycInt conjugate() const;  // zeta -> zeta^(N-1)

    bool is_integer() const;
    Int to_integer() const;  // requires is_integer()

    /// z * conj(z); throws when the product is not a rational integer
    /// (compare z * conjugate() against integer(target) to test without
    /// throwing).
    Int norm_squared() const;

    std::complex<double> to_complex() const;

  private:
    ContextPtr ctx_;
    std::vector<Int> c_;
};

}  // namespace qmix::cyc
