#pragma once

#include "h3/qfield.hpp"

#include <vector>

namespace h3 {

// polynomials over Z/m, coefficient i of x^i
using Poly = std::vector<Int>;

void poly_trim(Poly &a);
Poly poly_mod_coeffs(const Poly &a, const Int &m);
Poly poly_sub(const Poly &a, const Poly &b, const Int &m);
Poly poly_mul(const Poly &a, const Poly &b, const Int &m);
// remainder modulo a monic-up-to-unit divisor over the field Z/q
Poly poly_rem(const Poly &a, const Poly &b, const Int &q);
Poly poly_gcd(Poly a, Poly b, const Int &q);
Poly poly_powmod(const Poly &base, const Int &e, const Poly &m, const Int &q);
Int poly_eval(const Poly &a, const Int &x, const Int &m);

Int sqrt_mod_prime(const Int &a, const Int &q);
// distinct roots in F_q, sorted
std::vector<Int> roots_mod_prime(const Poly &f, const Int &q);

// (Z/q^n)[Y]/(m(Y)), m monic of degree deg
struct GRing {
    using Elt = std::vector<Int>;

    Int q, mod;
    unsigned n = 1;
    Poly m;

    GRing() = default;
    GRing(const Int &q_, unsigned n_, Poly m_);
    int deg() const { return static_cast<int>(m.size()) - 1; }

    Elt zero() const { return Elt(deg(), Int(0)); }
    Elt from_int(const Int &c) const;
    Elt gen() const;
    Elt add(const Elt &a, const Elt &b) const;
    Elt sub(const Elt &a, const Elt &b) const;
    Elt mul(const Elt &a, const Elt &b) const;
    Elt scale(const Elt &a, const Int &c) const;
    Elt pow(const Elt &a, const Int &e) const;
    bool is_zero(const Elt &a) const;
    bool eq(const Elt &a, const Elt &b) const { return is_zero(sub(a, b)); }
    // inverse of an element that is a unit modulo q and m mod q irreducible
    Elt inv(const Elt &a) const;
    // min q-adic valuation of the coefficients, n for zero
    unsigned coeff_val(const Elt &a) const;
    Elt eval(const Poly &f, const Elt &x) const;
    // Newton lift of a simple root known modulo q
    Elt newton_root(const Poly &f, Elt x) const;
};

}
