#include "h3/prover.hpp"

#include "oracle_data.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace h3;
using h3::testing::oracle_curve;

namespace {

ProverInput input(int c)
{
    return ProverInput{shipped_case(c), oracle_curve(c, "A"), oracle_curve(c, "B"), oracle_curve(c, "beta")};
}

Int md(const Int &a, const Int &p)
{
    Int r = a % p;
    return r < 0 ? Int(r + p) : r;
}

// affine reference over F_p; nullopt is O
using Aff = std::optional<std::pair<Int, Int>>;

Aff aff_add(const Aff &P, const Aff &Q, const Int &A, const Int &p)
{
    if (!P)
        return Q;
    if (!Q)
        return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    Int l, d;
    if (md(x1 - x2, p) == 0) {
        if (md(y1 + y2, p) == 0)
            return std::nullopt;
        d = md(2 * y1, p);
        mpz_invert(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        l = md((3 * x1 * x1 + A) * d, p);
    } else {
        d = md(x2 - x1, p);
        mpz_invert(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        l = md((y2 - y1) * d, p);
    }
    Int x3 = md(l * l - x1 - x2, p);
    return std::make_pair(x3, md(l * (x1 - x3) - y1, p));
}

Aff aff_mul(Aff P, Int n, const Int &A, const Int &p)
{
    Aff R;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t()))
            R = aff_add(R, P, A, p);
        P = aff_add(P, P, A, p);
        n >>= 1;
    }
    return R;
}

Aff to_aff(const ProjPoint &P, const Int &p)
{
    if (md(P.Z, p) == 0)
        return std::nullopt;
    Int zi;
    mpz_invert(zi.get_mpz_t(), P.Z.get_mpz_t(), p.get_mpz_t());
    return std::make_pair(md(P.X * zi, p), md(P.Y * zi, p));
}

// a point on y^2 = x^3 + A x + B mod p with p = 3 mod 4
ProjPoint some_point(const Curve &E, const Int &p, std::mt19937_64 &rng)
{
    for (;;) {
        Int x = Int(static_cast<unsigned long>(rng())) % p;
        Int rhs = md(x * x * x + E.A * x + E.B, p);
        if (rhs == 0)
            continue;
        Int y;
        mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), Int((p + 1) / 4).get_mpz_t(), p.get_mpz_t());
        if (md(y * y, p) == rhs)
            return ProjPoint{x, y, 1};
    }
}

}

TEST_CASE("modular square roots")
{
    std::mt19937_64 rng(1);
    for (const char *ns : {"1000003", "2305843009213693951", "1000037"}) {
        Int N(ns);
        REQUIRE((N % 4 == 3 || N % 8 == 5));
        for (int i = 0; i < 20; i++) {
            Int x = Int(static_cast<unsigned long>(rng())) % N;
            Int a = x * x % N;
            Int r = sqrt_mod(a, N);
            CHECK(r * r % N == a);
        }
    }
    CHECK_THROWS(sqrt_mod(2, Int(17)));
}

TEST_CASE("ModCtx agrees with plain mpz arithmetic")
{
    Int N("170141183460469231731687303715884105727");
    ModCtx ctx(N);
    gmp_randclass g(gmp_randinit_mt);
    g.seed(7);
    for (int i = 0; i < 200; i++) {
        Int a = g.get_z_range(N), b = g.get_z_range(N), r;
        ctx.mul(r, a, b);
        CHECK(r == a * b % N);
        ctx.add(r, a, b);
        CHECK(r == (a + b) % N);
        ctx.sub(r, a, b);
        CHECK(r == md(a - b, N));
        ctx.sqr(r, a);
        CHECK(r == a * a % N);
        if (sgn(a) != 0) {
            REQUIRE(ctx.inv(r, a));
            CHECK(r * a % N == 1);
        }
    }
    CHECK(ctx.inv2() * 2 % N == 1);
    ModCtx c15(15);
    Int r;
    CHECK_FALSE(c15.inv(r, 6));
}

TEST_CASE("projective formulas match the affine group law")
{
    Int p = 1000003;
    ModCtx ctx(p);
    Curve E{Int(5), Int(11)};
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; i++) {
        ProjPoint P = some_point(E, p, rng), Q = some_point(E, p, rng);
        CHECK(on_curve(P, E, ctx));
        Aff a = to_aff(P, p), b = to_aff(Q, p);
        ProjPoint D = ec_double(P, E, ctx);
        CHECK(on_curve(D, E, ctx));
        CHECK(to_aff(D, p) == aff_add(a, a, E.A, p));
        if (P.X != Q.X) {
            ProjPoint S = ec_add(P, Q, E, ctx);
            CHECK(on_curve(S, E, ctx));
            CHECK(to_aff(S, p) == aff_add(a, b, E.A, p));
        }
        Int n = Int(static_cast<unsigned long>(rng() % 100000)) + 1;
        Int acc = 1;
        ProjPoint M = scalar_mul(P, n, E, ctx, &acc);
        CHECK(to_aff(M, p) == aff_mul(a, n, E.A, p));
        // [m]P + [n]P = [m + n]P
        Int m = Int(static_cast<unsigned long>(rng() % 100000)) + 1;
        Aff lhs = aff_add(to_aff(scalar_mul(P, m, E, ctx), p), to_aff(M, p), E.A, p);
        CHECK(lhs == to_aff(scalar_mul(P, m + n, E, ctx), p));
    }
    CHECK(sgn(scalar_mul(ProjPoint{0, 1, 1}, 0, E, ctx).Z) == 0);
}

TEST_CASE("an addition of equal x-coordinates is flagged")
{
    Int p = 1000003;
    ModCtx ctx(p);
    Curve E{Int(5), Int(11)};
    std::mt19937_64 rng(8);
    ProjPoint P = some_point(E, p, rng);
    Int acc = 1;
    ec_add(P, P, E, ctx, &acc);
    CHECK(acc % p == 0);
    acc = 1;
    ec_add(P, ec_double(P, E, ctx), E, ctx, &acc);
    CHECK(acc % p != 0);
}

TEST_CASE("strongly nonzero")
{
    ModCtx ctx(Int(77));
    CHECK(strongly_nonzero(ProjPoint{1, 1, 2}, ctx));
    CHECK_FALSE(strongly_nonzero(ProjPoint{1, 1, 14}, ctx));
    CHECK_FALSE(strongly_nonzero(ProjPoint{0, 1, 0}, ctx));
}

TEST_CASE("Miller-Rabin")
{
    for (long n : {561L, 41041L, 1105L, 25326001L, 3215031751L})
        CHECK_FALSE(miller_rabin(Int(n), 20));
    for (long n : {2L, 3L, 821L, 1000003L})
        CHECK(miller_rabin(Int(n), 20));
    CHECK(miller_rabin((Int(1) << 127) - 1, 20));
    CHECK_FALSE(miller_rabin((Int(1) << 128) + 1, 20));
    CHECK_FALSE(miller_rabin(Int(1), 5));
}

TEST_CASE("known primes are proved")
{
    for (auto [c, k] : {std::pair{1, 100UL}, {1, 120UL}, {2, 23UL}}) {
        ProverInput in = input(c);
        ProveResult r = prove(in, k);
        CHECK(r.verdict);
        CHECK(r.cert.reason == "prime");
        CHECK(r.cert.F == F_k(in.P, k));
        CHECK(miller_rabin(r.cert.F, 10));
        std::string why;
        CHECK_MESSAGE(replay(in, r.cert, &why), why);
    }
}

TEST_CASE("composite F_k are rejected and replay agrees")
{
    ProverInput in = input(1);
    int seen = 0;
    for (unsigned long k = 2; k <= 60 && seen < 6; k++) {
        if (!norm_gate(in.P, k))
            continue;
        Int F = F_k(in.P, k);
        if (miller_rabin(F, 20))
            continue;
        ProveResult r = prove(in, k);
        CHECK_FALSE(r.verdict);
        CHECK(r.cert.reason != "prime");
        CHECK(replay(in, r.cert));
        seen++;
    }
    CHECK(seen == 6);
}

TEST_CASE("tampered certificates fail replay")
{
    ProverInput in = input(1);
    ProveResult r = prove(in, 100);
    Certificate c = r.cert;
    c.QX += 1;
    CHECK_FALSE(replay(in, c));
    c = r.cert;
    c.verdict = false;
    c.reason = "[2]Q is not O";
    CHECK_FALSE(replay(in, c));
    c = r.cert;
    c.k = 101;
    CHECK_FALSE(replay(in, c));
}

TEST_CASE("unsupported k")
{
    ProverInput in = input(1);
    CHECK_THROWS_AS(prove(in, 1), unsupported_k);
    CHECK_THROWS_AS(prove(in, 100, [](unsigned long) { return false; }), unsupported_k);
    ProverInput in2 = input(2);
    CHECK_THROWS_AS(prove(in2, 1), unsupported_k);
}

TEST_CASE("full path timing runs")
{
    ProverInput in = input(1);
    CHECK(full_path_ms(in, 100) > 0);
}
