#include "h3/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace h3::num {

static unsigned g_bits = 256;

void set_precision_bits(unsigned bits)
{
    g_bits = bits;
    Real::default_precision(bits * 30103 / 100000 + 2);
}

unsigned precision_bits() { return g_bits; }

Cx operator+(const Cx &a, const Cx &b) { return Cx(a.re + b.re, a.im + b.im); }
Cx operator-(const Cx &a, const Cx &b) { return Cx(a.re - b.re, a.im - b.im); }
Cx operator-(const Cx &a) { return Cx(-a.re, -a.im); }
Cx operator*(const Cx &a, const Cx &b) { return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re); }
Cx operator*(const Cx &a, const Real &s) { return Cx(a.re * s, a.im * s); }

Cx operator/(const Cx &a, const Cx &b)
{
    Real d = b.re * b.re + b.im * b.im;
    if (d == 0)
        throw std::domain_error("complex division by zero");
    return Cx((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

Real abs(const Cx &a) { return boost::multiprecision::hypot(a.re, a.im); }

Cx cexp(const Cx &a)
{
    Real r = boost::multiprecision::exp(a.re);
    return Cx(r * boost::multiprecision::cos(a.im), r * boost::multiprecision::sin(a.im));
}

Cx csqrt(const Cx &a)
{
    Real r = abs(a);
    Real x = boost::multiprecision::sqrt((r + a.re) / 2);
    Real y = boost::multiprecision::sqrt((r - a.re) / 2);
    if (a.im < 0)
        y = -y;
    return Cx(x, y);
}

Cx cpow(const Cx &a, unsigned n)
{
    Cx r(1), b = a;
    while (n) {
        if (n & 1)
            r = r * b;
        n >>= 1;
        if (n)
            b = b * b;
    }
    return r;
}

Real pi()
{
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real from_mpq(const mpq_class &q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

static Real eps() { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(g_bits) - 16); }

static Cx nome(const Cx &tau)
{
    // q = exp(2 pi i tau)
    Real tp = 2 * pi();
    return cexp(Cx(-tp * tau.im, tp * tau.re));
}

void eisenstein(const Cx &tau, Cx &E4, Cx &E6)
{
    Cx q = nome(tau), qn = q;
    Cx s3, s5;
    for (unsigned n = 1;; n++) {
        Cx t = qn / (Cx(1) - qn);
        Real n3 = Real(n) * n * n;
        Cx a = t * n3, b = t * (n3 * n * n);
        s3 = s3 + a;
        s5 = s5 + b;
        if (abs(b) < eps() && n > 2)
            break;
        if (n > 100000)
            throw std::runtime_error("eisenstein: no convergence");
        qn = qn * q;
    }
    E4 = Cx(1) + s3 * Real(240);
    E6 = Cx(1) - s5 * Real(504);
}

Cx j_invariant(const Cx &tau)
{
    Cx E4, E6;
    eisenstein(tau, E4, E6);
    Cx c = cpow(E4, 3);
    return c * Real(1728) / (c - E6 * E6);
}

Cx weierstrass_p(const Cx &z, const Cx &tau)
{
    Real tp = 2 * pi();
    Cx u = cexp(Cx(-tp * z.im, tp * z.re)), q = nome(tau);
    auto f = [](const Cx &x) {
        Cx d = Cx(1) - x;
        return x / (d * d);
    };
    Cx s = Cx(Real(1) / 12) + f(u), qn = q;
    Cx ui = Cx(1) / u;
    for (unsigned n = 1;; n++) {
        Cx t = f(qn * u) + f(qn * ui) - f(qn) * Real(2);
        s = s + t;
        if (abs(t) < eps() && n > 2)
            break;
        if (n > 100000)
            throw std::runtime_error("weierstrass_p: no convergence");
        qn = qn * q;
    }
    Cx w(0, tp);
    return w * w * s;
}

std::vector<Cx> poly_roots(const std::vector<Cx> &c)
{
    size_t n = c.size();
    auto eval = [&](const Cx &x) {
        Cx r(1);
        for (size_t i = n; i-- > 0;)
            r = r * x + c[i];
        return r;
    };
    // Durand-Kerner from the usual spiral start
    std::vector<Cx> z(n);
    Cx seed(Real(4) / 10, Real(9) / 10), p(1);
    Real scale = 1;
    for (auto &ci : c)
        scale = std::max(scale, Real(abs(ci)));
    for (size_t i = 0; i < n; i++) {
        z[i] = p * (scale + 1);
        p = p * seed;
    }
    Real tol = eps();
    for (int it = 0; it < 20000; it++) {
        Real change = 0;
        for (size_t i = 0; i < n; i++) {
            Cx den(1);
            for (size_t j = 0; j < n; j++)
                if (j != i)
                    den = den * (z[i] - z[j]);
            Cx d = eval(z[i]) / den;
            z[i] = z[i] - d;
            change = std::max(change, Real(abs(d) / (abs(z[i]) + 1)));
        }
        if (change < tol)
            break;
    }
    std::sort(z.begin(), z.end(), [](const Cx &a, const Cx &b) {
        if (a.re != b.re)
            return a.re < b.re;
        return a.im < b.im;
    });
    return z;
}

mpz_class nearest(const Real &x, const Real &tol, bool &ok)
{
    Real r = boost::multiprecision::round(x);
    if (boost::multiprecision::abs(x - r) > tol)
        ok = false;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
    return z;
}

}
