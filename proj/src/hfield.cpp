#include "h3/hfield.hpp"

namespace h3 {

HElem h_const(const KElem &k)
{
    HElem r;
    r.e[0] = k;
    return r;
}

HElem h_xi()
{
    HElem r;
    r.e[1] = KElem(1);
    return r;
}

HElem h_add(const HElem &x, const HElem &y)
{
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = k_add(x.e[i], y.e[i]);
    return r;
}

HElem h_sub(const HElem &x, const HElem &y)
{
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = k_sub(x.e[i], y.e[i]);
    return r;
}

HElem h_neg(const HElem &x)
{
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = k_neg(x.e[i]);
    return r;
}

HElem h_scale(const HField &F, const HElem &x, const KElem &k)
{
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = k_mul(F.D, x.e[i], k);
    return r;
}

HElem h_mul(const HField &F, const HElem &x, const HElem &y)
{
    std::array<KElem, 5> t;
    for (int i = 0; i < 3; i++) {
        if (x.e[i].is_zero())
            continue;
        for (int j = 0; j < 3; j++)
            if (!y.e[j].is_zero())
                t[i + j] = k_add(t[i + j], k_mul(F.D, x.e[i], y.e[j]));
    }
    for (int d = 4; d >= 3; d--) {
        if (t[d].is_zero())
            continue;
        t[d - 2] = k_sub(t[d - 2], k_mul(F.D, F.c1, t[d]));
        t[d - 3] = k_sub(t[d - 3], k_mul(F.D, F.c0, t[d]));
        t[d] = KElem();
    }
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = t[i];
    return r;
}

HElem h_pow(const HField &F, const HElem &x, unsigned long n)
{
    HElem r = h_int(1), b = x;
    while (n) {
        if (n & 1)
            r = h_mul(F, r, b);
        n >>= 1;
        if (n)
            b = h_mul(F, b, b);
    }
    return r;
}

std::array<std::array<KElem, 3>, 3> h_matrix(const HField &F, const HElem &x)
{
    std::array<std::array<KElem, 3>, 3> m;
    HElem col = x;
    for (int j = 0; j < 3; j++) {
        for (int i = 0; i < 3; i++)
            m[i][j] = col.e[i];
        col = h_mul(F, col, h_xi());
    }
    return m;
}

KElem norm_HK(const HField &F, const HElem &x)
{
    auto m = h_matrix(F, x);
    auto mul = [&](const KElem &a, const KElem &b) { return k_mul(F.D, a, b); };
    auto minor = [&](int r1, int r2, int c1, int c2) {
        return k_sub(mul(m[r1][c1], m[r2][c2]), mul(m[r1][c2], m[r2][c1]));
    };
    KElem d = mul(m[0][0], minor(1, 2, 1, 2));
    d = k_sub(d, mul(m[0][1], minor(1, 2, 0, 2)));
    d = k_add(d, mul(m[0][2], minor(1, 2, 0, 1)));
    return d;
}

Rat h_absnorm(const HField &F, const HElem &x) { return k_norm(F.D, norm_HK(F, x)); }

HElem h_inv(const HField &F, const HElem &x)
{
    auto m = h_matrix(F, x);
    std::array<std::array<KElem, 4>, 3> a;
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++)
            a[i][j] = m[i][j];
        a[i][3] = KElem(i == 0 ? 1 : 0);
    }
    for (int c = 0; c < 3; c++) {
        int piv = c;
        while (piv < 3 && a[piv][c].is_zero())
            piv++;
        if (piv == 3)
            throw std::domain_error("h_inv: zero divisor");
        std::swap(a[c], a[piv]);
        KElem iv = k_inv(F.D, a[c][c]);
        for (auto &v : a[c])
            v = k_mul(F.D, v, iv);
        for (int r = 0; r < 3; r++) {
            if (r == c || a[r][c].is_zero())
                continue;
            KElem f = a[r][c];
            for (int j = 0; j < 4; j++)
                a[r][j] = k_sub(a[r][j], k_mul(F.D, f, a[c][j]));
        }
    }
    HElem r;
    for (int i = 0; i < 3; i++)
        r.e[i] = a[i][3];
    return r;
}

HElem h_div(const HField &F, const HElem &x, const HElem &y) { return h_mul(F, x, h_inv(F, y)); }

bool k_is_integral(const KElem &k)
{
    Rat x2 = 2 * k.x, y2 = 2 * k.y;
    if (x2.get_den() != 1 || y2.get_den() != 1)
        return false;
    Int d = x2.get_num() - y2.get_num();
    return mpz_even_p(d.get_mpz_t());
}

bool h_is_integral(const HField &F, const HElem &x)
{
    auto m = h_matrix(F, x);
    auto mul = [&](const KElem &a, const KElem &b) { return k_mul(F.D, a, b); };
    KElem tr = k_add(k_add(m[0][0], m[1][1]), m[2][2]);
    KElem s2;
    for (int i = 0; i < 3; i++)
        for (int j = i + 1; j < 3; j++)
            s2 = k_add(s2, k_sub(mul(m[i][i], m[j][j]), mul(m[i][j], m[j][i])));
    return k_is_integral(tr) && k_is_integral(s2) && k_is_integral(norm_HK(F, x));
}

HElem h_subst(const HField &F, const HElem &x, const HElem &img)
{
    HElem r = h_const(x.e[0]);
    r = h_add(r, h_scale(F, img, x.e[1]));
    r = h_add(r, h_scale(F, h_mul(F, img, img), x.e[2]));
    return r;
}

Int h_den(const HElem &x)
{
    Int d = 1;
    for (const auto &k : x.e)
        for (const Rat *r : {&k.x, &k.y})
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), r->get_den_mpz_t());
    return d;
}

HElem p_k_elem(const SeqParams &P, unsigned long k)
{
    HElem r = h_int(1);
    r.e[1] = k_neg(to_k(qi_pow(P.alpha, k)));
    return r;
}

std::string rat_str(const Rat &r) { return r.get_str(); }

Rat rat_parse(const std::string &s)
{
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw param_error("bad rational '" + s + "'");
    if (r.get_den() == 0)
        throw param_error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

}
