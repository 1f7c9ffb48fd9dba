#include "h3/factor.hpp"

#include <algorithm>
#include <map>

namespace h3 {

bool is_probable_prime(const Int &n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

unsigned long valuation(const Int &n, const Int &p)
{
    if (sgn(n) == 0)
        throw std::domain_error("valuation of 0");
    Int m = n;
    unsigned long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        v++;
    }
    return v;
}

static Int brent(const Int &n, unsigned long c0, unsigned long max_iters)
{
    Int y = 2, c = c0, g = 1, r = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long iters = 0;
    auto f = [&](const Int &v) {
        Int t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; i++)
            y = f(y);
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < m && k + i < r; i++) {
                y = f(y);
                Int d = abs(x - y);
                q = q * d % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            iters += m;
            if (iters > max_iters)
                return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Int d = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

static void split(const Int &n, std::map<Int, unsigned> &out, unsigned long rho_iters)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    for (unsigned long c = 1; c < 20; c++) {
        Int g = brent(n, c, rho_iters);
        if (g == 0)
            break;
        if (g != n) {
            split(g, out, rho_iters);
            split(n / g, out, rho_iters);
            return;
        }
    }
    throw unfactored_error(n);
}

Factorization factor(const Int &n_in, unsigned long trial_bound, unsigned long rho_iters)
{
    if (sgn(n_in) == 0)
        throw std::domain_error("factor(0)");
    Int n = abs(n_in);
    std::map<Int, unsigned> out;
    for (unsigned long p = 2; p <= trial_bound; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            out[Int(p)]++;
        }
    }
    split(n, out, rho_iters);
    return Factorization(out.begin(), out.end());
}

std::vector<Int> divisors(const Factorization &f)
{
    std::vector<Int> d{1};
    for (const auto &[p, e] : f) {
        size_t n = d.size();
        Int pk = 1;
        for (unsigned i = 0; i < e; i++) {
            pk *= p;
            for (size_t j = 0; j < n; j++)
                d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

}
