#include "h3/galois.hpp"

#include <algorithm>

namespace h3 {

static Int md(const Int &a, const Int &m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void poly_trim(Poly &a)
{
    while (!a.empty() && sgn(a.back()) == 0)
        a.pop_back();
}

Poly poly_mod_coeffs(const Poly &a, const Int &m)
{
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); i++)
        r[i] = md(a[i], m);
    poly_trim(r);
    return r;
}

Poly poly_sub(const Poly &a, const Poly &b, const Int &m)
{
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); i++)
        r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++)
        r[i] -= b[i];
    return poly_mod_coeffs(r, m);
}

Poly poly_mul(const Poly &a, const Poly &b, const Int &m)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++)
            r[i + j] += a[i] * b[j];
    return poly_mod_coeffs(r, m);
}

Poly poly_rem(const Poly &a_in, const Poly &b_in, const Int &q)
{
    Poly a = poly_mod_coeffs(a_in, q), b = poly_mod_coeffs(b_in, q);
    if (b.empty())
        throw std::domain_error("poly_rem by zero");
    Int lead;
    if (!mpz_invert(lead.get_mpz_t(), b.back().get_mpz_t(), q.get_mpz_t()))
        throw std::domain_error("poly_rem: leading coefficient not invertible");
    while (a.size() >= b.size()) {
        Int c = md(a.back() * lead, q);
        size_t sh = a.size() - b.size();
        for (size_t i = 0; i < b.size(); i++)
            a[sh + i] = md(a[sh + i] - c * b[i], q);
        poly_trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, const Int &q)
{
    a = poly_mod_coeffs(a, q);
    b = poly_mod_coeffs(b, q);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), q.get_mpz_t());
        for (auto &c : a)
            c = md(c * inv, q);
    }
    return a;
}

Poly poly_powmod(const Poly &base, const Int &e, const Poly &m, const Int &q)
{
    Poly r{1}, b = poly_rem(base, m, q);
    r = poly_rem(r, m, q);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = poly_rem(poly_mul(r, r, q), m, q);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = poly_rem(poly_mul(r, b, q), m, q);
    }
    return r;
}

Int poly_eval(const Poly &a, const Int &x, const Int &m)
{
    Int r = 0;
    for (size_t i = a.size(); i-- > 0;)
        r = md(r * x + a[i], m);
    return r;
}

Int sqrt_mod_prime(const Int &a_in, const Int &q)
{
    Int a = md(a_in, q);
    if (sgn(a) == 0)
        return 0;
    if (q == 2)
        return a;
    if (mpz_legendre(a.get_mpz_t(), q.get_mpz_t()) != 1)
        throw std::domain_error("sqrt_mod_prime: nonresidue");
    Int qm1 = q - 1;
    unsigned long s = mpz_scan1(qm1.get_mpz_t(), 0);
    Int Q;
    mpz_tdiv_q_2exp(Q.get_mpz_t(), qm1.get_mpz_t(), s);
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), q.get_mpz_t()) != -1)
        z++;
    Int c, x, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), Q.get_mpz_t(), q.get_mpz_t());
    e = (Q + 1) / 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), Q.get_mpz_t(), q.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = md(tt * tt, q);
            i++;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; j++)
            b = md(b * b, q);
        x = md(x * b, q);
        c = md(b * b, q);
        t = md(t * c, q);
        m = i;
    }
    return std::min(x, Int(q - x));
}

static void split_roots(const Poly &h, const Int &q, std::vector<Int> &out)
{
    int d = static_cast<int>(h.size()) - 1;
    if (d <= 0)
        return;
    if (d == 1) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), h[1].get_mpz_t(), q.get_mpz_t());
        out.push_back(md(-h[0] * inv, q));
        return;
    }
    Int e = (q - 1) / 2;
    for (Int delta = 0; delta < q; delta++) {
        Poly g = poly_powmod(Poly{delta, 1}, e, h, q);
        g = poly_sub(g, Poly{1}, q);
        Poly f = poly_gcd(h, g, q);
        int fd = static_cast<int>(f.size()) - 1;
        if (fd > 0 && fd < d) {
            split_roots(f, q, out);
            Poly other = h;
            // exact division h / f over F_q
            Poly quo(h.size() - f.size() + 1, Int(0)), rem = poly_mod_coeffs(h, q);
            while (rem.size() >= f.size()) {
                size_t sh = rem.size() - f.size();
                Int c = rem.back();
                quo[sh] = c;
                for (size_t i = 0; i < f.size(); i++)
                    rem[sh + i] = md(rem[sh + i] - c * f[i], q);
                poly_trim(rem);
            }
            poly_trim(quo);
            split_roots(quo, q, out);
            return;
        }
    }
    throw std::runtime_error("split_roots: no splitting element found");
}

std::vector<Int> roots_mod_prime(const Poly &f_in, const Int &q)
{
    Poly f = poly_mod_coeffs(f_in, q);
    if (f.empty())
        throw std::domain_error("roots of zero polynomial");
    std::vector<Int> out;
    if (q == 2) {
        for (int x = 0; x < 2; x++)
            if (sgn(poly_eval(f, x, q)) == 0)
                out.push_back(x);
        return out;
    }
    Poly xq = poly_powmod(Poly{0, 1}, q, f, q);
    Poly h = poly_gcd(f, poly_sub(xq, Poly{0, 1}, q), q);
    if (sgn(poly_eval(h, 0, q)) == 0) {
        out.push_back(0);
        // strip the factor x
        h.erase(h.begin());
    }
    split_roots(h, q, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GRing::GRing(const Int &q_, unsigned n_, Poly m_) : q(q_), n(n_), m(std::move(m_))
{
    mpz_pow_ui(mod.get_mpz_t(), q.get_mpz_t(), n);
    if (m.size() < 2 || m.back() != 1)
        throw std::domain_error("GRing: modulus must be monic of positive degree");
    for (auto &c : m)
        c = md(c, mod);
}

GRing::Elt GRing::from_int(const Int &c) const
{
    Elt r = zero();
    r[0] = md(c, mod);
    return r;
}

GRing::Elt GRing::gen() const
{
    if (deg() == 1)
        return from_int(-m[0]);
    Elt r = zero();
    r[1] = 1;
    return r;
}

GRing::Elt GRing::add(const Elt &a, const Elt &b) const
{
    Elt r(deg());
    for (int i = 0; i < deg(); i++)
        r[i] = md(a[i] + b[i], mod);
    return r;
}

GRing::Elt GRing::sub(const Elt &a, const Elt &b) const
{
    Elt r(deg());
    for (int i = 0; i < deg(); i++)
        r[i] = md(a[i] - b[i], mod);
    return r;
}

GRing::Elt GRing::scale(const Elt &a, const Int &c) const
{
    Elt r(deg());
    for (int i = 0; i < deg(); i++)
        r[i] = md(a[i] * c, mod);
    return r;
}

GRing::Elt GRing::mul(const Elt &a, const Elt &b) const
{
    int d = deg();
    std::vector<Int> t(2 * d - 1, Int(0));
    for (int i = 0; i < d; i++) {
        if (sgn(a[i]) == 0)
            continue;
        for (int j = 0; j < d; j++)
            t[i + j] += a[i] * b[j];
    }
    for (int k = 2 * d - 2; k >= d; k--) {
        Int c = md(t[k], mod);
        if (sgn(c) == 0)
            continue;
        for (int i = 0; i < d; i++)
            t[k - d + i] -= c * m[i];
    }
    Elt r(d);
    for (int i = 0; i < d; i++)
        r[i] = md(t[i], mod);
    return r;
}

GRing::Elt GRing::pow(const Elt &a, const Int &e) const
{
    Elt r = from_int(1);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0)
        return r;
    for (size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mul(r, a);
    }
    return r;
}

bool GRing::is_zero(const Elt &a) const
{
    for (const auto &c : a)
        if (sgn(md(c, mod)) != 0)
            return false;
    return true;
}

GRing::Elt GRing::inv(const Elt &a) const
{
    if (deg() == 2 && sgn(m[1]) == 0) {
        // conjugate over Y^2 = -m0
        Int nm = md(a[0] * a[0] + m[0] * a[1] * a[1], mod), ni;
        if (!mpz_invert(ni.get_mpz_t(), nm.get_mpz_t(), mod.get_mpz_t()))
            throw std::domain_error("GRing::inv: not a unit");
        return Elt{md(a[0] * ni, mod), md(-a[1] * ni, mod)};
    }
    // inverse modulo q, then Newton y <- y(2 - ay)
    Int qf;
    mpz_pow_ui(qf.get_mpz_t(), q.get_mpz_t(), deg());
    Elt y = pow(a, qf - 2);
    Elt two = from_int(2);
    for (unsigned prec = 1; prec < n; prec *= 2)
        y = mul(y, sub(two, mul(a, y)));
    if (!eq(mul(a, y), from_int(1)))
        throw std::domain_error("GRing::inv: not a unit");
    return y;
}

unsigned GRing::coeff_val(const Elt &a) const
{
    unsigned v = n;
    for (const auto &c : a) {
        Int x = md(c, mod);
        if (sgn(x) == 0)
            continue;
        unsigned w = 0;
        while (mpz_divisible_p(x.get_mpz_t(), q.get_mpz_t())) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
            w++;
        }
        v = std::min(v, w);
    }
    return v;
}

GRing::Elt GRing::eval(const Poly &f, const Elt &x) const
{
    Elt r = zero();
    for (size_t i = f.size(); i-- > 0;)
        r = add(mul(r, x), from_int(f[i]));
    return r;
}

GRing::Elt GRing::newton_root(const Poly &f, Elt x) const
{
    Poly df;
    for (size_t i = 1; i < f.size(); i++)
        df.push_back(f[i] * Int(static_cast<unsigned long>(i)));
    for (unsigned it = 0; it < 2 * n + 4; it++) {
        Elt fx = eval(f, x);
        if (is_zero(fx))
            return x;
        x = sub(x, mul(fx, inv(eval(df, x))));
    }
    if (!is_zero(eval(f, x)))
        throw std::runtime_error("newton_root: no convergence");
    return x;
}

}
