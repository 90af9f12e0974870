#pragma once

#include <vector>

#include "qmix/ints.hpp"

namespace qmix::poly {

/// Dense integer polynomial, coefficients ascending; invariant: no trailing zeros.
using ZPoly = std::vector<Int>;

ZPoly trim(ZPoly p);
bool is_zero(const ZPoly& p);
int degree(const ZPoly& p);  // -1 for the zero polynomial

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly scale(const ZPoly& a, const Int& c);

/// Quotient of an exact division; throws if the division leaves a remainder.
ZPoly exact_div(const ZPoly& num, const ZPoly& den);

/// Remainder of division by a monic polynomial.
ZPoly mod_monic(ZPoly num, const ZPoly& monic_den);

Int content(const ZPoly& p);
/// p / content(p), sign-normalized to a positive leading coefficient.
ZPoly primitive_part(const ZPoly& p);

/// Gcd over Z via a primitive pseudo-remainder sequence; result primitive with
/// positive leading coefficient.  gcd(0, p) = primitive(p).
ZPoly gcd(ZPoly a, ZPoly b);

/// N-th cyclotomic polynomial (cached).
const ZPoly& cyclotomic_polynomial(long n);

Int evaluate(const ZPoly& p, const Int& x);
Rat evaluate(const std::vector<Rat>& p, const Rat& x);

}  // namespace qmix::poly
