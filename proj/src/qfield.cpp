#include "h3/qfield.hpp"

#include <array>

namespace h3 {

QuadInt::QuadInt(Int a_, Int b_, long D_) : a(std::move(a_)), b(std::move(b_)), D(D_)
{
    Int d = a - b;
    if (mpz_odd_p(d.get_mpz_t()))
        throw param_error("QuadInt: a and b must have equal parity");
}

std::string QuadInt::str() const
{
    return "(" + a.get_str() + (sgn(b) < 0 ? " - " : " + ") + Int(abs(b)).get_str() + "*sqrt(" +
           std::to_string(D) + "))/2";
}

static void same_d(const QuadInt &x, const QuadInt &y)
{
    if (x.D != y.D)
        throw param_error("QuadInt: mismatched discriminants");
}

QuadInt qi_add(const QuadInt &x, const QuadInt &y)
{
    same_d(x, y);
    return QuadInt(x.a + y.a, x.b + y.b, x.D);
}

QuadInt qi_sub(const QuadInt &x, const QuadInt &y)
{
    same_d(x, y);
    return QuadInt(x.a - y.a, x.b - y.b, x.D);
}

QuadInt qi_neg(const QuadInt &x) { return QuadInt(-x.a, -x.b, x.D); }

QuadInt qi_conj(const QuadInt &x) { return QuadInt(x.a, -x.b, x.D); }

QuadInt qi_mul(const QuadInt &x, const QuadInt &y)
{
    same_d(x, y);
    Int a = x.a * y.a + x.D * (x.b * y.b);
    Int b = x.a * y.b + x.b * y.a;
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), 2);
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), 2);
    return QuadInt(a, b, x.D);
}

QuadInt qi_pow(const QuadInt &x, unsigned long n)
{
    QuadInt r = QuadInt::from_int(1, x.D), base = x;
    while (n) {
        if (n & 1)
            r = qi_mul(r, base);
        n >>= 1;
        if (n)
            base = qi_mul(base, base);
    }
    return r;
}

Int qi_norm(const QuadInt &x)
{
    Int n = x.a * x.a - x.D * (x.b * x.b);
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

KElem to_k(const QuadInt &q)
{
    KElem k(Rat(q.a, 2), Rat(q.b, 2));
    k.x.canonicalize();
    k.y.canonicalize();
    return k;
}

KElem k_add(const KElem &u, const KElem &v) { return KElem(u.x + v.x, u.y + v.y); }
KElem k_sub(const KElem &u, const KElem &v) { return KElem(u.x - v.x, u.y - v.y); }
KElem k_neg(const KElem &u) { return KElem(-u.x, -u.y); }

KElem k_mul(long D, const KElem &u, const KElem &v)
{
    return KElem(u.x * v.x + D * (u.y * v.y), u.x * v.y + u.y * v.x);
}

Rat k_norm(long D, const KElem &u) { return u.x * u.x - D * (u.y * u.y); }

KElem k_inv(long D, const KElem &u)
{
    Rat n = k_norm(D, u);
    if (sgn(n) == 0)
        throw std::domain_error("k_inv: zero");
    return KElem(u.x / n, -u.y / n);
}

SeqParams shipped_case(int case_id)
{
    SeqParams P;
    P.case_id = case_id;
    if (case_id == 1) {
        P.D = -23;
        P.c0 = QuadInt::from_int(-1, P.D);
        P.c1 = QuadInt::from_int(-1, P.D);
        P.alpha = QuadInt(3, 1, P.D);
        P.p_sign = 59;
    } else if (case_id == 2) {
        P.D = -31;
        P.c0 = QuadInt::from_int(1, P.D);
        P.c1 = QuadInt::from_int(1, P.D);
        P.alpha = QuadInt(1, 1, P.D);
        P.p_sign = 47;
    } else {
        throw param_error("unknown case " + std::to_string(case_id));
    }
    return P;
}

QuadInt pi_k(const SeqParams &P, unsigned long k)
{
    QuadInt a2 = qi_pow(P.alpha, 2 * k);
    QuadInt a3 = qi_mul(a2, qi_pow(P.alpha, k));
    return qi_add(qi_add(QuadInt::from_int(1, P.D), qi_mul(P.c1, a2)), qi_mul(P.c0, a3));
}

Int F_k(const SeqParams &P, unsigned long k) { return qi_norm(pi_k(P, k)); }

Cofactor cofactor_Ck(const SeqParams &P, unsigned long k)
{
    Cofactor c;
    c.N_cof = qi_norm(qi_add(P.c1, qi_mul(P.c0, qi_pow(P.alpha, k))));
    if (sgn(c.N_cof) == 0)
        throw param_error("cofactor norm vanishes");
    c.e2 = mpz_scan1(c.N_cof.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(c.C.get_mpz_t(), c.N_cof.get_mpz_t(), c.e2);
    if (c.e2 >= 6 * k)
        throw param_error("2-adic valuation of the cofactor norm reaches 6k");
    return c;
}

bool norm_gate(const SeqParams &P, unsigned long k)
{
    Int n = qi_norm(qi_add(P.c1, qi_mul(P.c0, qi_pow(P.alpha, k))));
    return F_k(P, k) > 16 * n * n;
}

// O_K/4 in the basis 1, w = (1 + sqrt D)/2, with w^2 = w + (D - 1)/4
using Mod4 = std::array<long, 2>;

static Mod4 to_mod4(const QuadInt &q)
{
    Int x = (q.a - q.b) / 2;
    return {static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), 4)), static_cast<long>(mpz_fdiv_ui(q.b.get_mpz_t(), 4))};
}

static Mod4 mul_mod4(long D, Mod4 u, Mod4 v)
{
    long m = ((D - 1) / 4) % 4;
    long x = u[0] * v[0] + m * u[1] * v[1];
    long y = u[0] * v[1] + u[1] * v[0] + u[1] * v[1];
    return {((x % 4) + 4) % 4, ((y % 4) + 4) % 4};
}

int epsilon(const QuadInt &pi)
{
    Mod4 p = to_mod4(pi);
    Mod4 c = mul_mod4(pi.D, mul_mod4(pi.D, p, p), p);
    Mod4 one = {1, 0};
    Mod4 msd = to_mod4(QuadInt(0, -2, pi.D));
    return (c == one || c == msd) ? 1 : -1;
}

int epsilon_k(const SeqParams &P, unsigned long k) { return epsilon(pi_k(P, k)); }

void validate(const SeqParams &P)
{
    if (P.D >= 0 || P.D % 4 == 0 || ((P.D % 4) + 4) % 4 != 1)
        throw param_error("D must be negative and 1 mod 4");
    for (const QuadInt *q : {&P.c0, &P.c1, &P.alpha})
        if (q->D != P.D)
            throw param_error("parameter with wrong discriminant");
    if (qi_norm(P.alpha) != 8)
        throw param_error("norm of alpha must be 8");
    // conjugate of alpha lies in lambda_bar^3, so alpha = Tr(alpha) there, and lambda_bar^3 meets Z in 8Z
    Int t = qi_trace(P.alpha);
    auto residue8 = [&](const QuadInt &q) {
        // q = (a + b sqrt D)/2 = (a + b (2 alpha - u)/v) / 2 with alpha -> t; requires v odd
        Int v = P.alpha.b;
        if (mpz_even_p(v.get_mpz_t()))
            throw param_error("alpha must have odd sqrt(D) coefficient");
        Int inv;
        mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), Int(64).get_mpz_t());
        Int s = (2 * t - P.alpha.a) * inv;
        Int num = q.a + q.b * s;
        num = num % 64;
        if (num < 0)
            num += 64;
        return Int(num / 2 % 8);
    };
    Int one = 1;
    Int e0 = residue8(qi_add(qi_add(QuadInt::from_int(1, P.D), P.c1), P.c0));
    Int e1 = residue8(qi_add(qi_add(QuadInt::from_int(1, P.D), P.c1), qi_mul(P.c0, QuadInt::from_int(t, P.D))));
    if (e0 == one || e1 == one)
        throw param_error("p_k primality condition on c0, c1 fails modulo lambda_bar^3");
}

}
