#include "h3/prover.hpp"

#include <chrono>

namespace h3 {

ModCtx::ModCtx(const Int &N) : N_(N)
{
    if (N_ < 3 || mpz_even_p(N_.get_mpz_t()))
        throw std::domain_error("ModCtx: modulus must be odd and at least 3");
    inv2_ = (N_ + 1) / 2;
}

void ModCtx::mul(Int &r, const Int &a, const Int &b)
{
    mpz_mul(t_.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_mod(r.get_mpz_t(), t_.get_mpz_t(), N_.get_mpz_t());
}

void ModCtx::sqr(Int &r, const Int &a)
{
    mpz_mul(t_.get_mpz_t(), a.get_mpz_t(), a.get_mpz_t());
    mpz_mod(r.get_mpz_t(), t_.get_mpz_t(), N_.get_mpz_t());
}

void ModCtx::add(Int &r, const Int &a, const Int &b)
{
    mpz_add(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (mpz_cmp(r.get_mpz_t(), N_.get_mpz_t()) >= 0)
        mpz_sub(r.get_mpz_t(), r.get_mpz_t(), N_.get_mpz_t());
}

void ModCtx::sub(Int &r, const Int &a, const Int &b)
{
    mpz_sub(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sgn(r) < 0)
        mpz_add(r.get_mpz_t(), r.get_mpz_t(), N_.get_mpz_t());
}

Int ModCtx::red(const Int &a) const
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), N_.get_mpz_t());
    return r;
}

Int ModCtx::pow(const Int &a, const Int &e) const
{
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), N_.get_mpz_t());
    return r;
}

bool ModCtx::inv(Int &r, const Int &a) const
{
    return mpz_invert(r.get_mpz_t(), red(a).get_mpz_t(), N_.get_mpz_t()) != 0;
}

Int sqrt_mod(const Int &a_in, const Int &N)
{
    unsigned long m8 = mpz_fdiv_ui(N.get_mpz_t(), 8);
    Int a, r;
    mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), N.get_mpz_t());
    if (m8 % 4 == 3) {
        Int e = (N + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), N.get_mpz_t());
        return r;
    }
    if (m8 == 5) {
        // Atkin
        Int a2 = 2 * a, v, e = (N - 5) / 8;
        mpz_powm(v.get_mpz_t(), a2.get_mpz_t(), e.get_mpz_t(), N.get_mpz_t());
        Int i = a2 * v * v % N;
        r = a * v * (i - 1);
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), N.get_mpz_t());
        return r;
    }
    throw std::domain_error("sqrt_mod: modulus must be 3 mod 4 or 5 mod 8");
}

bool reduce_helem(Int &out, const HElem &e, const Int &r, const Int &xi_res, const ModCtx &ctx)
{
    const Int &N = ctx.N();
    Int acc = 0, tp = 1, di;
    for (int i = 0; i < 3; i++) {
        const KElem &k = e.e[i];
        for (int part = 0; part < 2; part++) {
            const Rat &q = part ? k.y : k.x;
            if (sgn(q) == 0)
                continue;
            if (!ctx.inv(di, Int(q.get_den())))
                return false;
            Int term = q.get_num() * di % N * tp;
            if (part)
                term = term % N * r;
            acc += term;
        }
        tp = tp * xi_res % N;
    }
    out = ctx.red(acc);
    return true;
}

ProjPoint ec_double(const ProjPoint &P, const Curve &E, ModCtx &c)
{
    if (sgn(P.Z) == 0)
        return P;
    Int XX, ZZ, w, s, ss, sss, R, RR, B, h, t;
    ProjPoint Q;
    c.sqr(XX, P.X);
    c.sqr(ZZ, P.Z);
    c.mul(w, E.A, ZZ);
    c.add(w, w, XX);
    c.add(w, w, XX);
    c.add(w, w, XX);
    c.mul(s, P.Y, P.Z);
    c.add(s, s, s);
    c.sqr(ss, s);
    c.mul(sss, s, ss);
    c.mul(R, P.Y, s);
    c.sqr(RR, R);
    c.add(t, P.X, R);
    c.sqr(B, t);
    c.sub(B, B, XX);
    c.sub(B, B, RR);
    c.sqr(h, w);
    c.sub(h, h, B);
    c.sub(h, h, B);
    c.mul(Q.X, h, s);
    c.sub(t, B, h);
    c.mul(Q.Y, w, t);
    c.sub(Q.Y, Q.Y, RR);
    c.sub(Q.Y, Q.Y, RR);
    Q.Z = sss;
    return Q;
}

ProjPoint ec_add(const ProjPoint &P, const ProjPoint &Q, const Curve &E, ModCtx &c, Int *acc)
{
    (void)E;
    if (sgn(P.Z) == 0)
        return Q;
    if (sgn(Q.Z) == 0)
        return P;
    Int Y1Z2, X1Z2, Z1Z2, u, uu, v, vv, vvv, R, A, t;
    ProjPoint S;
    c.mul(Y1Z2, P.Y, Q.Z);
    c.mul(X1Z2, P.X, Q.Z);
    c.mul(Z1Z2, P.Z, Q.Z);
    c.mul(u, Q.Y, P.Z);
    c.sub(u, u, Y1Z2);
    c.sqr(uu, u);
    c.mul(v, Q.X, P.Z);
    c.sub(v, v, X1Z2);
    if (acc)
        c.mul(*acc, *acc, v);
    c.sqr(vv, v);
    c.mul(vvv, v, vv);
    c.mul(R, vv, X1Z2);
    c.mul(A, uu, Z1Z2);
    c.sub(A, A, vvv);
    c.sub(A, A, R);
    c.sub(A, A, R);
    c.mul(S.X, v, A);
    c.sub(t, R, A);
    c.mul(S.Y, u, t);
    c.mul(t, vvv, Y1Z2);
    c.sub(S.Y, S.Y, t);
    c.mul(S.Z, vvv, Z1Z2);
    return S;
}

ProjPoint scalar_mul(const ProjPoint &P, const Int &n, const Curve &E, ModCtx &ctx, Int *acc)
{
    if (sgn(n) <= 0)
        return ProjPoint{0, 1, 0};
    unsigned long e = mpz_scan1(n.get_mpz_t(), 0);
    Int m;
    mpz_tdiv_q_2exp(m.get_mpz_t(), n.get_mpz_t(), e);
    const int w = 4;
    ProjPoint T[1 << w];
    T[1] = P;
    T[2] = ec_double(P, E, ctx);
    for (int i = 3; i < (1 << w); i++)
        T[i] = ec_add(T[i - 1], P, E, ctx, acc);
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    size_t ndig = (bits + w - 1) / w;
    auto digit = [&](size_t i) {
        unsigned d = 0;
        for (int b = w - 1; b >= 0; b--)
            d = 2 * d + mpz_tstbit(m.get_mpz_t(), i * w + b);
        return d;
    };
    ProjPoint R = T[digit(ndig - 1)];
    for (size_t i = ndig - 1; i-- > 0;) {
        for (int j = 0; j < w; j++)
            R = ec_double(R, E, ctx);
        unsigned d = digit(i);
        if (d)
            R = ec_add(R, T[d], E, ctx, acc);
    }
    for (unsigned long j = 0; j < e; j++)
        R = ec_double(R, E, ctx);
    return R;
}

bool strongly_nonzero(const ProjPoint &Q, const ModCtx &ctx)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), Q.Z.get_mpz_t(), ctx.N().get_mpz_t());
    return g == 1;
}

bool on_curve(const ProjPoint &P, const Curve &E, ModCtx &c)
{
    Int l, r, t, ZZ;
    c.sqr(l, P.Y);
    c.mul(l, l, P.Z);
    c.sqr(ZZ, P.Z);
    c.sqr(r, P.X);
    c.mul(r, r, P.X);
    c.mul(t, E.A, P.X);
    c.mul(t, t, ZZ);
    c.add(r, r, t);
    c.mul(t, E.B, ZZ);
    c.mul(t, t, P.Z);
    c.add(r, r, t);
    return l == r;
}

namespace {

struct Setup {
    bool ok = false;
    std::string reason;
    Int r, t;
    int flips = 0;
};

// steps 1-5: square root of D and the residue of xi
Setup find_residues(const SeqParams &P, unsigned long k, ModCtx &ctx)
{
    Setup s;
    const Int &N = ctx.N();
    Int r = sqrt_mod(Int(P.D), N);
    if (ctx.red(r * r) != ctx.red(Int(P.D))) {
        s.reason = "D is not a square";
        return s;
    }
    Int c0 = ctx.red(P.c0.a * ctx.inv2()), c1 = ctx.red(P.c1.a * ctx.inv2());
    if (sgn(P.c0.b) != 0 || sgn(P.c1.b) != 0)
        throw param_error("c0 and c1 must be rational integers");
    for (int flip = 0; flip < 2; flip++) {
        Int rr = flip ? ctx.red(N - r) : r;
        Int a = ctx.red((P.alpha.a + P.alpha.b * rr) * ctx.inv2()), ak, t;
        if (!ctx.inv(t, ctx.pow(a, Int(k)))) {
            s.reason = "alpha not invertible";
            return s;
        }
        if (sgn(ctx.red(t * t * t + c1 * t + c0)) == 0) {
            s.ok = true;
            s.r = rr;
            s.t = t;
            s.flips = flip;
            return s;
        }
    }
    s.reason = "no root of the cubic for either sign";
    return s;
}

}

ProveResult prove(const ProverInput &in, unsigned long k, const std::function<bool(unsigned long)> &admissible)
{
    auto t0 = std::chrono::steady_clock::now();
    const SeqParams &P = in.P;
    if (k < 2)
        throw unsupported_k("k must be at least 2");
    if (admissible && !admissible(k))
        throw unsupported_k("k=" + std::to_string(k) + " is not in the condition table");
    if (!norm_gate(P, k))
        throw unsupported_k("norm gate fails at k=" + std::to_string(k));
    Cofactor cof;
    try {
        cof = cofactor_Ck(P, k);
    } catch (const param_error &e) {
        throw unsupported_k(e.what());
    }
    ProveResult res;
    Certificate &c = res.cert;
    c.case_id = P.case_id;
    c.k = k;
    c.F = F_k(P, k);
    c.C = cof.C;
    c.e2 = cof.e2;
    c.scalar_bits = 6 * k - 1 + mpz_sizeinbase(cof.C.get_mpz_t(), 2);
    unsigned long m8 = mpz_fdiv_ui(c.F.get_mpz_t(), 8);
    if (m8 == 1 || m8 % 2 == 0)
        throw param_error("F_k = " + std::to_string(m8) + " mod 8 contradicts the parameter invariants");
    auto finish = [&](bool v, const std::string &why) {
        c.verdict = v;
        c.reason = why;
        res.verdict = v;
        c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return res;
    };

    ModCtx ctx(c.F);
    Setup s = find_residues(P, k, ctx);
    if (!s.ok)
        return finish(false, s.reason);
    c.r = s.r;
    c.xi_res = s.t;
    c.sign_flips = s.flips;
    if (!reduce_helem(c.A, in.A, s.r, s.t, ctx) || !reduce_helem(c.B, in.B, s.r, s.t, ctx) ||
        !reduce_helem(c.beta, in.beta, s.r, s.t, ctx))
        return finish(false, "curve denominator shares a factor with F_k");
    Curve E{c.A, c.B};
    ProjPoint P0{0, c.beta, 1};
    if (!on_curve(P0, E, ctx))
        throw std::logic_error("reduced P is not on the reduced curve");
    Int scalar = c.C << (6 * k - 1), acc = 1;
    ProjPoint Q = scalar_mul(P0, scalar, E, ctx, &acc);
    c.QX = Q.X;
    c.QY = Q.Y;
    c.QZ = Q.Z;
    ProjPoint Q2 = ec_double(Q, E, ctx);
    c.Z2 = Q2.Z;
    Int g;
    mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), c.F.get_mpz_t());
    if (g != 1)
        return finish(false, "exceptional addition in the ladder");
    if (!strongly_nonzero(Q, ctx))
        return finish(false, "Q is not strongly nonzero");
    if (sgn(Q2.Z) != 0)
        return finish(false, "[2]Q is not O");
    return finish(true, "prime");
}

bool replay(const ProverInput &in, const Certificate &c, std::string *why)
{
    auto fail = [&](const std::string &w) {
        if (why)
            *why = w;
        return false;
    };
    const SeqParams &P = in.P;
    Int F = F_k(P, c.k);
    if (F != c.F)
        return fail("F_k mismatch");
    ModCtx ctx(F);
    if (c.reason == "D is not a square" || c.reason == "alpha not invertible" ||
        c.reason == "no root of the cubic for either sign") {
        Setup s = find_residues(P, c.k, ctx);
        return (!s.ok && s.reason == c.reason && !c.verdict) ? true : fail("setup exit not reproduced");
    }
    if (ctx.red(c.r * c.r) != ctx.red(Int(P.D)))
        return fail("r^2 != D");
    Int a = ctx.red((P.alpha.a + P.alpha.b * c.r) * ctx.inv2());
    if (ctx.red(c.xi_res * ctx.pow(a, Int(c.k))) != 1)
        return fail("xi residue is not alpha^-k");
    Int c0 = ctx.red(P.c0.a * ctx.inv2()), c1 = ctx.red(P.c1.a * ctx.inv2()), t = c.xi_res;
    if (sgn(ctx.red(t * t * t + c1 * t + c0)) != 0)
        return fail("xi residue is not a root of the cubic");
    Int A, B, beta;
    if (!reduce_helem(A, in.A, c.r, t, ctx) || !reduce_helem(B, in.B, c.r, t, ctx) ||
        !reduce_helem(beta, in.beta, c.r, t, ctx))
        return (!c.verdict) ? true : fail("reduction failed");
    if (A != c.A || B != c.B || beta != c.beta)
        return fail("reduced curve mismatch");
    Curve E{A, B};
    Int scalar = cofactor_Ck(P, c.k).C << (6 * c.k - 1), acc = 1;
    ProjPoint R{0, 1, 0}, P0{0, beta, 1};
    for (size_t i = mpz_sizeinbase(scalar.get_mpz_t(), 2); i-- > 0;) {
        R = ec_double(R, E, ctx);
        if (mpz_tstbit(scalar.get_mpz_t(), i))
            R = ec_add(R, P0, E, ctx, &acc);
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), F.get_mpz_t());
    bool sn = strongly_nonzero(R, ctx);
    bool verdict = g == 1 && sn && sgn(ec_double(R, E, ctx).Z) == 0;
    if (verdict != c.verdict)
        return fail("verdict mismatch");
    if (sn && strongly_nonzero(ProjPoint{c.QX, c.QY, c.QZ}, ctx)) {
        if (ctx.red(R.X * c.QZ) != ctx.red(c.QX * R.Z) || ctx.red(R.Y * c.QZ) != ctx.red(c.QY * R.Z))
            return fail("Q mismatch");
    }
    return true;
}

double full_path_ms(const ProverInput &in, unsigned long k)
{
    auto t0 = std::chrono::steady_clock::now();
    const SeqParams &P = in.P;
    Int F = F_k(P, k), C = cofactor_Ck(P, k).C;
    ModCtx ctx(F);
    Int r = sqrt_mod(Int(P.D), F), t = 1;
    Int c0 = ctx.red(P.c0.a * ctx.inv2()), c1 = ctx.red(P.c1.a * ctx.inv2());
    for (int flip = 0; flip < 2; flip++) {
        Int rr = flip ? ctx.red(F - r) : r, ti;
        Int a = ctx.red((P.alpha.a + P.alpha.b * rr) * ctx.inv2());
        if (ctx.inv(ti, ctx.pow(a, Int(k))) && flip == 0)
            t = ti;
        (void)ctx.red(ti * ti * ti + c1 * ti + c0);
    }
    Int A = 1, beta = 1;
    if (!reduce_helem(A, in.A, r, t, ctx) || !reduce_helem(beta, in.beta, r, t, ctx)) {
        A = 1;
        beta = 1;
    }
    Curve E{A, ctx.red(beta * beta)};
    Int acc = 1;
    ProjPoint Q = scalar_mul(ProjPoint{0, beta, 1}, C << (6 * k - 1), E, ctx, &acc);
    (void)strongly_nonzero(Q, ctx);
    (void)ec_double(Q, E, ctx);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}
