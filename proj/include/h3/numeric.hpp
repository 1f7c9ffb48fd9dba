#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <gmpxx.h>

#include <vector>

namespace h3::num {

using Real = boost::multiprecision::mpfr_float;

// sets the working precision of newly created Reals
void set_precision_bits(unsigned bits);
unsigned precision_bits();

struct Cx {
    Real re, im;
    Cx() : re(0), im(0) {}
    Cx(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
};

Cx operator+(const Cx &a, const Cx &b);
Cx operator-(const Cx &a, const Cx &b);
Cx operator-(const Cx &a);
Cx operator*(const Cx &a, const Cx &b);
Cx operator*(const Cx &a, const Real &s);
Cx operator/(const Cx &a, const Cx &b);
Real abs(const Cx &a);
Cx cexp(const Cx &a);
Cx csqrt(const Cx &a);
Cx cpow(const Cx &a, unsigned n);
Real pi();

Real from_mpq(const mpq_class &q);

// Eisenstein series for the lattice Z + Z tau, Im tau > 0
void eisenstein(const Cx &tau, Cx &E4, Cx &E6);
Cx j_invariant(const Cx &tau);
// Weierstrass p for the lattice Z + Z tau
Cx weierstrass_p(const Cx &z, const Cx &tau);

// roots of the monic polynomial with coefficients c (low to high, leading 1 omitted)
std::vector<Cx> poly_roots(const std::vector<Cx> &c);

// nearest integer, with ok cleared if the distance exceeds tol
mpz_class nearest(const Real &x, const Real &tol, bool &ok);

}
