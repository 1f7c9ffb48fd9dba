#include "h3/cmsetup.hpp"

#include "h3/galois.hpp"
#include "h3/numeric.hpp"
#include "h3/prover.hpp"
#include "h3/symbols.hpp"

#include <numeric>
#include <optional>
#include <random>

namespace h3 {

using num::Cx;
using num::Real;

namespace {

struct Form {
    long a, b, c;
};

std::vector<Form> reduced_forms(long D)
{
    std::vector<Form> out;
    for (long a = 1; 3 * a * a <= -D; a++)
        for (long b = -a + 1; b <= a; b++) {
            if ((b * b - D) % (4 * a) != 0)
                continue;
            long c = (b * b - D) / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    return out;
}

Int int_coeff(const QuadInt &c)
{
    if (sgn(c.b) != 0)
        throw param_error("c0 and c1 must be rational integers");
    return c.a / 2;
}

// complex embeddings of H: sqrt(D) -> i sqrt|D|, xi -> xi[m]
struct Embeddings {
    const SeqParams &P;
    HField F;
    Real sqabs, tol;
    std::vector<Cx> xi;

    Embeddings(const SeqParams &P_, unsigned bits) : P(P_), F(HField::of(P_))
    {
        num::set_precision_bits(bits);
        sqabs = boost::multiprecision::sqrt(Real(-P.D));
        tol = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 4));
        xi = num::poly_roots({Cx(Real(int_coeff(P.c0).get_str())), Cx(Real(int_coeff(P.c1).get_str())), Cx()});
    }

    Cx k(const KElem &e) const { return Cx(num::from_mpq(e.x), num::from_mpq(e.y) * sqabs); }

    Cx at(const HElem &h, int m) const { return k(h.e[0]) + xi[m] * (k(h.e[1]) + xi[m] * k(h.e[2])); }

    std::optional<HElem> recognize(const std::array<Cx, 3> &v, const Int &den) const
    {
        // Lagrange interpolation through (xi[m], v[m])
        Cx c[3];
        for (int m = 0; m < 3; m++) {
            const Cx &a = xi[(m + 1) % 3], &b = xi[(m + 2) % 3];
            Cx w = v[m] / ((xi[m] - a) * (xi[m] - b));
            c[0] = c[0] + w * a * b;
            c[1] = c[1] - w * (a + b);
            c[2] = c[2] + w;
        }
        HElem h;
        Real d(den.get_str());
        for (int i = 0; i < 3; i++) {
            bool ok = true;
            Int x = num::nearest(c[i].re * d, tol, ok), y = num::nearest(c[i].im * d / sqabs, tol, ok);
            if (!ok)
                return std::nullopt;
            h.e[i] = KElem(Rat(x, den), Rat(y, den));
            h.e[i].x.canonicalize();
            h.e[i].y.canonicalize();
        }
        return h;
    }

    Int den() const { return Int(-2 * P.D); }
};

struct ClassData {
    std::vector<Form> forms;
    std::vector<Cx> taus, jvals;
    std::vector<Int> HD;
};

ClassData class_data(long D, unsigned bits)
{
    num::set_precision_bits(bits);
    ClassData cd;
    cd.forms = reduced_forms(D);
    Real sq = boost::multiprecision::sqrt(Real(-D));
    std::vector<Cx> poly{Cx(1)};
    for (const Form &f : cd.forms) {
        Cx tau(Real(-f.b) / (2 * f.a), sq / (2 * f.a));
        Cx j = num::j_invariant(tau);
        cd.taus.push_back(tau);
        cd.jvals.push_back(j);
        std::vector<Cx> next(poly.size() + 1);
        for (size_t i = 0; i < poly.size(); i++) {
            next[i] = next[i] + poly[i];
            next[i + 1] = next[i + 1] - poly[i] * j;
        }
        poly = next;
    }
    // poly is high to low
    Real tol("1e-10");
    for (size_t i = poly.size(); i-- > 0;) {
        bool ok = true;
        Int c = num::nearest(poly[i].re, tol, ok);
        if (!ok || boost::multiprecision::abs(poly[i].im) > tol)
            throw precision_error("class polynomial coefficient not integral at " + std::to_string(bits) + " bits");
        cd.HD.push_back(c);
    }
    return cd;
}

HElem hq(long n) { return h_int(Int(n)); }

HElem velu_t(const HField &F, const HElem &A, const HElem &xT)
{
    return h_add(h_mul(F, hq(3), h_mul(F, xT, xT)), A);
}

void velu2(const HField &F, const HElem &A, const HElem &B, const HElem &xT, HElem &A2, HElem &B2)
{
    HElem t = velu_t(F, A, xT);
    A2 = h_sub(A, h_mul(F, hq(5), t));
    B2 = h_sub(B, h_mul(F, hq(7), h_mul(F, xT, t)));
}

HElem j_of(const HField &F, const HElem &A, const HElem &B)
{
    HElem a3 = h_mul(F, hq(4), h_pow(F, A, 3));
    return h_div(F, h_mul(F, hq(1728), a3), h_add(a3, h_mul(F, hq(27), h_mul(F, B, B))));
}

HElem cubic_at(const HField &F, const HElem &x, const HElem &A, const HElem &B)
{
    return h_add(h_add(h_pow(F, x, 3), h_mul(F, A, x)), B);
}

// arithmetic on y^2 = x^3 + a x + b over F_p, affine
struct SmallCurve {
    Int p, a, b;
    struct Pt {
        Int x, y;
        bool inf = false;
    };
    Int md(const Int &v) const
    {
        Int r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    Int inv(const Int &v) const
    {
        Int r;
        if (!mpz_invert(r.get_mpz_t(), md(v).get_mpz_t(), p.get_mpz_t()))
            throw std::domain_error("SmallCurve: not invertible");
        return r;
    }
    bool on(const Pt &P) const { return P.inf || md(P.y * P.y - P.x * P.x * P.x - a * P.x - b) == 0; }
    Pt add(const Pt &P, const Pt &Q) const
    {
        if (P.inf)
            return Q;
        if (Q.inf)
            return P;
        Int l;
        if (md(P.x - Q.x) == 0) {
            if (md(P.y + Q.y) == 0)
                return Pt{0, 0, true};
            l = md((3 * P.x * P.x + a) * inv(2 * P.y));
        } else {
            l = md((Q.y - P.y) * inv(Q.x - P.x));
        }
        Int x = md(l * l - P.x - Q.x);
        return Pt{x, md(l * (P.x - x) - P.y), false};
    }
    Pt mul(Pt P, Int n) const
    {
        if (n < 0) {
            n = -n;
            P.y = md(-P.y);
        }
        Pt R{0, 0, true};
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t()))
                R = add(R, P);
            P = add(P, P);
            n >>= 1;
        }
        return R;
    }
    Int count() const
    {
        Int n = p + 1;
        for (Int x = 0; x < p; x++)
            n += mpz_legendre(md(x * x * x + a * x + b).get_mpz_t(), p.get_mpz_t());
        return n;
    }
    std::optional<Pt> random_point(std::mt19937_64 &rng) const
    {
        for (int tries = 0; tries < 1000; tries++) {
            Int x = Int(static_cast<unsigned long>(rng() % p.get_ui()));
            Int r = md(x * x * x + a * x + b);
            if (sgn(r) == 0 || mpz_legendre(r.get_mpz_t(), p.get_mpz_t()) != 1)
                continue;
            Int y = sqrt_mod_prime(r, p);
            if (rng() & 1)
                y = md(-y);
            return Pt{x, y, false};
        }
        return std::nullopt;
    }
};

// a prime of degree one above (p, sqrt D - r): xi -> t
struct DegOne {
    Int p, r;
    std::vector<Int> ts;
};

std::optional<DegOne> degree_one(const SeqParams &P, long p)
{
    Int pz(p), Dm;
    mpz_mod(Dm.get_mpz_t(), Int(P.D).get_mpz_t(), pz.get_mpz_t());
    if (sgn(Dm) == 0 || mpz_legendre(Dm.get_mpz_t(), pz.get_mpz_t()) != 1)
        return std::nullopt;
    DegOne d{pz, sqrt_mod_prime(Dm, pz), {}};
    d.ts = roots_mod_prime(Poly{int_coeff(P.c0), int_coeff(P.c1), 0, 1}, pz);
    if (d.ts.size() != 3)
        return std::nullopt;
    return d;
}

bool reduce_at(Int &out, const HElem &h, const Int &r, const Int &t, const ModCtx &ctx)
{
    return reduce_helem(out, h, r, t, ctx);
}

// (x - y) + 2y tau with tau -> a0 modulo the prime (2, tau - a0)
int bit_at(const KElem &k, int a0)
{
    Rat v = (k.x - k.y) + 2 * k.y * a0;
    if (mpz_even_p(v.get_den_mpz_t()))
        throw derivation_error("element not integral above 2");
    return mpz_odd_p(v.get_num_mpz_t()) ? 1 : 0;
}

std::array<int, 3> red_two(const HElem &h, int a0)
{
    return {bit_at(h.e[0], a0), bit_at(h.e[1], a0), bit_at(h.e[2], a0)};
}

// F_2[x]/(x^3 + c1 x + c0)
std::array<int, 3> f8mul(const std::array<int, 3> &a, const std::array<int, 3> &b, int c1, int c0)
{
    int r[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++)
            r[i + j] ^= a[i] & b[j];
    for (int d = 4; d >= 3; d--) {
        int t = r[d];
        r[d] = 0;
        r[d - 2] ^= t & c1;
        r[d - 3] ^= t & c0;
    }
    return {r[0], r[1], r[2]};
}

// a0 with lambda = (2, tau - a0), tau = (1 + sqrt D)/2
int lambda_a0(const SeqParams &P)
{
    Int x = (P.alpha.a - P.alpha.b) / 2, y = P.alpha.b;
    for (int a0 = 0; a0 < 2; a0++)
        if (mpz_even_p(Int(x + y * a0).get_mpz_t()))
            return a0;
    throw param_error("alpha is not in a prime above 2");
}

}

std::vector<Int> class_poly(long D, unsigned bits) { return class_data(D, bits).HD; }

HElem hd_eval(const SeqParams &P, const std::vector<Int> &HD, const HElem &x)
{
    HField F = HField::of(P);
    HElem r;
    for (size_t i = HD.size(); i-- > 0;)
        r = h_add(h_mul(F, r, x), h_int(HD[i]));
    return r;
}

std::vector<HElem> xi_conjugates(const SeqParams &P, unsigned bits)
{
    Embeddings E(P, bits);
    std::vector<HElem> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        auto c = E.recognize({E.xi[perm[0]], E.xi[perm[1]], E.xi[perm[2]]}, E.den());
        if (c && cubic_at(E.F, *c, h_const(to_k(P.c1)), h_const(to_k(P.c0))).is_zero())
            out.push_back(*c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (out.size() != 3 || !(out[0] == h_xi()))
        throw derivation_error("H/K automorphisms not recovered");
    return out;
}

HElem j_in_H(const SeqParams &P, const std::vector<Int> &HD, unsigned bits)
{
    ClassData cd = class_data(P.D, bits);
    if (cd.HD != HD)
        throw derivation_error("class polynomial mismatch");
    Embeddings E(P, bits);
    std::array<int, 3> perm{0, 1, 2};
    std::optional<HElem> found;
    do {
        auto c = E.recognize({cd.jvals[perm[0]], cd.jvals[perm[1]], cd.jvals[perm[2]]}, E.den());
        if (!c || !hd_eval(P, HD, *c).is_zero())
            continue;
        bool rational = true;
        for (auto &k : c->e)
            rational = rational && sgn(k.y) == 0;
        if (rational)
            found = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found)
        throw precision_error("no root of H_D recognized in Q(xi)");
    // conjugates are the three roots
    std::vector<HElem> roots;
    for (auto &s : xi_conjugates(P, bits)) {
        HElem js = h_subst(E.F, *found, s);
        if (!hd_eval(P, HD, js).is_zero())
            throw derivation_error("conjugate of j is not a root of H_D");
        for (auto &r : roots)
            if (r == js)
                throw derivation_error("conjugates of j coincide");
        roots.push_back(js);
    }
    return *found;
}

void curve_with_square_B(const SeqParams &P, const HElem &j, HElem &A, HElem &B, HElem &beta)
{
    HField F = HField::of(P);
    if (j == hq(0) || j == hq(1728))
        throw derivation_error("unsupported curve: j is 0 or 1728");
    HElem m = h_sub(hq(1728), j);
    HElem A0 = h_mul(F, hq(3), h_mul(F, j, m));
    HElem B0 = h_mul(F, hq(2), h_mul(F, j, h_mul(F, m, m)));
    beta = h_mul(F, B0, B0);
    A = h_mul(F, A0, beta);
    B = h_mul(F, beta, beta);
    if (!h_is_integral(F, A) || !h_is_integral(F, B) || !h_is_integral(F, beta)) {
        // u = d^2 keeps B a square
        Int d = 2 * h_den(A) * h_den(B) * h_den(beta);
        Rat d2(d * d);
        A = h_scale(F, A, KElem(d2 * d2));
        B = h_scale(F, B, KElem(d2 * d2 * d2));
        beta = h_scale(F, beta, KElem(d2 * Rat(d)));
    }
}

std::vector<HElem> two_torsion(const SeqParams &P, const HElem &A, const HElem &B, unsigned bits)
{
    Embeddings E(P, bits);
    std::vector<Cx> rts[3];
    for (int m = 0; m < 3; m++)
        rts[m] = num::poly_roots({E.at(B, m), E.at(A, m), Cx()});
    std::vector<HElem> out;
    for (auto &r0 : rts[0])
        for (auto &r1 : rts[1])
            for (auto &r2 : rts[2]) {
                auto c = E.recognize({r0, r1, r2}, E.den());
                if (c && cubic_at(E.F, *c, A, B).is_zero())
                    out.push_back(*c);
            }
    if (out.size() != 3)
        throw derivation_error("x^3 + A x + B does not split over H");
    return out;
}

HElem gamma3_with_sign(const SeqParams &P, const HElem &j, const HElem &A, const HElem &B, GammaSign *report,
                       unsigned long seed, unsigned bits)
{
    Embeddings E(P, bits);
    HElem jm = h_sub(j, hq(1728));
    std::optional<HElem> g;
    for (int s = 0; s < 8 && !g; s++) {
        std::array<Cx, 3> v;
        for (int m = 0; m < 3; m++) {
            v[m] = num::csqrt(E.at(jm, m));
            if (s >> m & 1)
                v[m] = -v[m];
        }
        auto c = E.recognize(v, E.den());
        if (c && h_mul(E.F, *c, *c) == jm)
            g = c;
    }
    if (!g)
        throw derivation_error("j - 1728 has no square root in H");

    // pi = (a + b sqrt D)/2 of norm p, smallest b > 0
    long p = P.p_sign;
    if (p % 4 != 3)
        throw param_error("auxiliary prime must be 3 mod 4");
    QuadInt pi;
    bool have = false;
    for (long b = 1; !have && -P.D * b * b <= 4 * p; b++) {
        long a2 = 4 * p + P.D * b * b;
        long a = std::lround(std::sqrt(static_cast<double>(a2)));
        if (a > 0 && a * a == a2) {
            pi = QuadInt(a, b, P.D);
            have = true;
        }
    }
    if (!have)
        throw param_error("auxiliary prime is not the norm of an element");
    auto deg1 = degree_one(P, p);
    if (!deg1)
        throw param_error("auxiliary prime does not split completely in H");
    Int pz(p), r;
    mpz_invert(r.get_mpz_t(), pi.b.get_mpz_t(), pz.get_mpz_t());
    r = -pi.a * r;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    int eps = epsilon(pi);
    ModCtx ctx(pz);
    std::mt19937_64 rng(seed);
    int decision = 0, sigma0 = 0;
    for (const Int &t : deg1->ts) {
        Int a, b, gg;
        if (!reduce_at(a, A, r, t, ctx) || !reduce_at(b, B, r, t, ctx) || !reduce_at(gg, *g, r, t, ctx))
            throw derivation_error("bad reduction at the auxiliary prime");
        SmallCurve C{pz, a, b};
        if (C.md(4 * a * a * a + 27 * b * b) == 0)
            throw derivation_error("singular reduction at the auxiliary prime");
        Int n = C.count();
        Int ap = pz + 1 - n;
        int sigma = ap == pi.a ? 1 : (ap == -pi.a ? -1 : 0);
        if (sigma == 0)
            throw derivation_error("point count is not p + 1 -/+ Tr(pi)");
        for (int i = 0; i < 5; i++) {
            auto Q = C.random_point(rng);
            if (!Q)
                throw derivation_error("no points found");
            if (!C.mul(*Q, n).inf)
                throw derivation_error("[#E]Q != O");
        }
        int leg = mpz_legendre(Int(6 * gg % pz).get_mpz_t(), pz.get_mpz_t());
        if (leg == 0)
            throw derivation_error("6t vanishes at the auxiliary prime");
        int d = leg * eps * sigma;
        if (decision != 0 && d != decision)
            throw derivation_error("sign test disagrees between primes above p");
        decision = d;
        sigma0 = sigma;
    }
    HElem out = decision == 1 ? *g : h_neg(*g);
    if (report)
        *report = GammaSign{p, pi, eps, sigma0, decision != 1};
    return out;
}

bool identify_kernel_lambda_bar(const SeqParams &P, CurveData &c, unsigned bits)
{
    HField F = HField::of(P);
    std::vector<HElem> xs = two_torsion(P, c.A, c.B, bits);
    std::vector<HElem> conj = xi_conjugates(P, bits);
    int lam = lambda_a0(P), lbar = 1 - lam;
    int c1 = mpz_odd_p(int_coeff(P.c1).get_mpz_t()), c0 = mpz_odd_p(int_coeff(P.c0).get_mpz_t());
    // Frobenius at lambda_bar: xi -> xi^2 in O_H / lambda_bar
    auto xi2 = f8mul({0, 1, 0}, {0, 1, 0}, c1, c0);
    std::optional<HElem> sigma;
    for (auto &s : conj)
        if (red_two(s, lbar) == xi2) {
            if (sigma)
                throw derivation_error("Frobenius at lambda_bar is ambiguous");
            sigma = s;
        }
    if (!sigma)
        throw derivation_error("Frobenius at lambda_bar not found");
    HElem j_lbar = h_subst(F, c.j, *sigma), j_lam = h_subst(F, j_lbar, *sigma);
    int ilb = -1, il = -1;
    for (int i = 0; i < 3; i++) {
        HElem A2, B2;
        velu2(F, c.A, c.B, xs[i], A2, B2);
        HElem ji = j_of(F, A2, B2);
        if (ji == j_lbar) {
            if (ilb >= 0)
                throw derivation_error("two candidates for E[lambda_bar]");
            ilb = i;
        }
        if (ji == j_lam) {
            if (il >= 0)
                throw derivation_error("two candidates for E[lambda]");
            il = i;
        }
    }
    if (ilb < 0 || il < 0 || ilb == il)
        throw derivation_error("kernel labelling failed");
    c.x_lambda_bar = xs[ilb];
    c.x_lambda = xs[il];

    // analytic check: half-periods of Z + Z tau_f scaled onto E in each embedding
    ClassData cd = class_data(P.D, bits);
    Embeddings E(P, bits);
    bool agree = true;
    for (int m = 0; m < 3; m++) {
        Cx jm = E.at(c.j, m);
        int fi = -1;
        for (size_t i = 0; i < cd.jvals.size(); i++)
            if (num::abs(cd.jvals[i] - jm) < E.tol * (num::abs(jm) + 1))
                fi = static_cast<int>(i);
        if (fi < 0)
            throw derivation_error("embedding of j matches no form");
        const Form &f = cd.forms[fi];
        const Cx &tau = cd.taus[fi];
        Cx E4, E6;
        num::eisenstein(tau, E4, E6);
        Real p2 = num::pi() * num::pi();
        Cx g2 = E4 * (4 * p2 * p2 / 3), g3 = E6 * (8 * p2 * p2 * p2 / 27);
        Cx aL = -g2 * Real(Real(1) / 4), bL = -g3 * Real(Real(1) / 4);
        Cx mu2 = E.at(c.B, m) * aL / (E.at(c.A, m) * bL);
        const long half[3][2] = {{1, 0}, {0, 1}, {1, 1}};
        for (auto &h : half) {
            long mm = h[0], nn = h[1];
            Cx z = (Cx(Real(mm)) + tau * Real(nn)) * Real(Real(1) / 2);
            Cx xv = mu2 * num::weierstrass_p(z, tau);
            int idx = -1;
            for (int i = 0; i < 3; i++)
                if (num::abs(E.at(xs[i], m) - xv) < E.tol * (num::abs(xv) + 1))
                    idx = i;
            if (idx < 0)
                throw derivation_error("half-period matches no 2-torsion root");
            auto in = [&](int a0) {
                long X = (1 + f.b) * mm / 2 - nn * f.c - a0 * mm;
                long Y = (1 + f.b) * nn / 2 + f.a * mm - nn * f.b - a0 * nn;
                return X % 2 == 0 && Y % 2 == 0;
            };
            if (in(lbar) != (idx == ilb) || in(lam) != (idx == il))
                agree = false;
        }
    }
    return agree;
}

void velu_dual_numerator(const SeqParams &P, CurveData &c)
{
    HField F = HField::of(P);
    velu2(F, c.A, c.B, c.x_lambda_bar, c.Aprime, c.Bprime);
    HElem t = velu_t(F, c.A, c.x_lambda_bar);
    c.x0 = h_add(c.x_lambda, h_div(F, t, h_sub(c.x_lambda, c.x_lambda_bar)));
    if (!cubic_at(F, c.x0, c.Aprime, c.Bprime).is_zero())
        throw derivation_error("x0 is not 2-torsion on E'");
    HElem tp = velu_t(F, c.Aprime, c.x0);
    c.f_coeffs = {hq(1), h_neg(c.x0), tp};
    c.disc_f = h_sub(h_mul(F, c.x0, c.x0), h_mul(F, hq(4), tp));
    // the dual lands on (16A, 64B)
    HElem A2, B2;
    velu2(F, c.Aprime, c.Bprime, c.x0, A2, B2);
    if (!(A2 == h_mul(F, hq(16), c.A)) || !(B2 == h_mul(F, hq(64), c.B)))
        throw derivation_error("dual isogeny codomain is not E");
}

std::vector<std::string> curve_invariant_failures(const SeqParams &P, const CurveData &c, const std::vector<Int> &HD)
{
    HField F = HField::of(P);
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char *name) {
        if (!ok)
            bad.push_back(name);
    };
    need(h_mul(F, c.beta, c.beta) == c.B, "beta^2 = B");
    need(h_mul(F, c.gamma3, c.gamma3) == h_sub(c.j, hq(1728)), "gamma3^2 = j - 1728");
    need(hd_eval(P, HD, c.j).is_zero(), "H_D(j) = 0");
    need(cubic_at(F, c.x0, c.Aprime, c.Bprime).is_zero(), "x0^3 + A'x0 + B' = 0");
    need(!(c.j == hq(0)) && !(c.j == hq(1728)), "j not 0 or 1728");
    HElem disc = h_mul(F, hq(-16), h_add(h_mul(F, hq(4), h_pow(F, c.A, 3)), h_mul(F, hq(27), h_mul(F, c.B, c.B))));
    need(!disc.is_zero() && disc == c.disc_E, "disc_E = -16(4A^3 + 27B^2) != 0");
    need(j_of(F, c.A, c.B) == c.j, "j(A, B) = j");
    need(cubic_at(F, c.x_lambda, c.A, c.B).is_zero() && cubic_at(F, c.x_lambda_bar, c.A, c.B).is_zero() &&
             !(c.x_lambda == c.x_lambda_bar),
         "kernel roots");
    HElem A2, B2;
    velu2(F, c.A, c.B, c.x_lambda_bar, A2, B2);
    need(A2 == c.Aprime && B2 == c.Bprime, "E' = E / E[lambda_bar]");
    HElem tp = velu_t(F, c.Aprime, c.x0);
    need(c.f_coeffs[0] == hq(1) && c.f_coeffs[1] == h_neg(c.x0) && c.f_coeffs[2] == tp, "f coefficients");
    need(c.disc_f == h_sub(h_mul(F, c.f_coeffs[1], c.f_coeffs[1]), h_mul(F, hq(4), h_mul(F, c.f_coeffs[0], c.f_coeffs[2]))),
         "disc_f");
    return bad;
}

long dual_composition_check(const SeqParams &P, const CurveData &c, unsigned npoints, unsigned long seed)
{
    std::mt19937_64 rng(seed);
    for (long p = 101; p < 100000; p += 2) {
        if (!mpz_probab_prime_p(Int(p).get_mpz_t(), 30))
            continue;
        auto d = degree_one(P, p);
        if (!d)
            continue;
        ModCtx ctx(d->p);
        const Int &t = d->ts[0];
        Int A, B, xlb, x0, Ap, Bp;
        if (!reduce_at(A, c.A, d->r, t, ctx) || !reduce_at(B, c.B, d->r, t, ctx) ||
            !reduce_at(xlb, c.x_lambda_bar, d->r, t, ctx) || !reduce_at(x0, c.x0, d->r, t, ctx) ||
            !reduce_at(Ap, c.Aprime, d->r, t, ctx) || !reduce_at(Bp, c.Bprime, d->r, t, ctx))
            continue;
        SmallCurve E{d->p, A, B}, E1{d->p, Ap, Bp};
        if (E.md(4 * A * A * A + 27 * B * B) == 0 || E1.md(4 * Ap * Ap * Ap + 27 * Bp * Bp) == 0)
            continue;
        auto velu_map = [](const SmallCurve &C, const SmallCurve::Pt &R, const Int &xT) {
            if (R.inf || C.md(R.x - xT) == 0)
                return SmallCurve::Pt{0, 0, true};
            Int t = C.md(3 * xT * xT + C.a), u = C.inv(R.x - xT);
            return SmallCurve::Pt{C.md(R.x + t * u), C.md(R.y * (1 - t * u * u)), false};
        };
        unsigned done = 0;
        for (int tries = 0; done < npoints && tries < 100 * static_cast<int>(npoints); tries++) {
            auto R = E.random_point(rng);
            if (!R)
                break;
            SmallCurve::Pt S = velu_map(E, *R, xlb);
            if (!E1.on(S))
                throw derivation_error("phi(R) is not on E'");
            SmallCurve::Pt T = velu_map(E1, S, x0);
            if (!T.inf)
                T = SmallCurve::Pt{E.md(T.x * E.inv(4)), E.md(T.y * E.inv(8)), false};
            SmallCurve::Pt R2 = E.add(*R, *R);
            if (T.inf != R2.inf || (!T.inf && (T.x != R2.x || T.y != R2.y)))
                throw derivation_error("phi_hat(phi(R)) != [2]R modulo " + std::to_string(p));
            done++;
        }
        if (done < npoints)
            continue;
        return p;
    }
    throw derivation_error("no usable auxiliary prime for the composition check");
}

std::vector<long> cm_spot_check(const SeqParams &P, const CurveData &c, unsigned count)
{
    std::vector<long> used;
    for (long p = 3; p < 500 && used.size() < count; p += 2) {
        if (!mpz_probab_prime_p(Int(p).get_mpz_t(), 30))
            continue;
        auto d = degree_one(P, p);
        if (!d)
            continue;
        long tr = -1;
        for (long b = 1; tr < 0 && -P.D * b * b <= 4 * p; b++) {
            long a2 = 4 * p + P.D * b * b;
            long a = std::lround(std::sqrt(static_cast<double>(a2)));
            if (a * a == a2)
                tr = a;
        }
        if (tr < 0)
            throw derivation_error("split prime without a principal factor: " + std::to_string(p));
        ModCtx ctx(d->p);
        bool ok = true;
        for (const Int &t : d->ts) {
            Int A, B;
            if (!reduce_at(A, c.A, d->r, t, ctx) || !reduce_at(B, c.B, d->r, t, ctx)) {
                ok = false;
                break;
            }
            SmallCurve E{d->p, A, B};
            if (E.md(4 * A * A * A + 27 * B * B) == 0) {
                ok = false;
                break;
            }
            Int n = E.count();
            if (n != p + 1 - tr && n != p + 1 + tr)
                throw derivation_error("point count at " + std::to_string(p) + " is not p + 1 -/+ " +
                                       std::to_string(tr));
        }
        if (ok)
            used.push_back(p);
    }
    if (used.size() < count)
        throw derivation_error("not enough primes for the CM spot check");
    return used;
}

Derivation derive_curve(const SeqParams &P, unsigned long seed)
{
    validate(P);
    HField F = HField::of(P);
    for (unsigned bits = 1200; bits <= 4800; bits *= 2) {
        try {
            Derivation d;
            d.precision_bits = bits;
            d.class_poly = class_poly(P.D, bits);
            CurveData &c = d.curve;
            c.j = j_in_H(P, d.class_poly, bits);
            curve_with_square_B(P, c.j, c.A, c.B, c.beta);
            c.gamma3 = gamma3_with_sign(P, c.j, c.A, c.B, &d.sign, seed, bits);
            d.analytic_labels_agree = identify_kernel_lambda_bar(P, c, bits);
            if (!d.analytic_labels_agree)
                throw derivation_error("Artin and analytic kernel labels disagree");
            velu_dual_numerator(P, c);
            c.disc_E = h_mul(F, hq(-16), h_add(h_mul(F, hq(4), h_pow(F, c.A, 3)), h_mul(F, hq(27), h_mul(F, c.B, c.B))));
            auto bad = curve_invariant_failures(P, c, d.class_poly);
            if (!bad.empty())
                throw derivation_error("curve invariant fails: " + bad.front());
            d.aux_prime = dual_composition_check(P, c, 20, seed);
            d.cm_primes = cm_spot_check(P, c, 3);
            return d;
        } catch (const precision_error &) {
            continue;
        }
    }
    throw precision_error("recognition failed up to 4800 bits");
}

}
