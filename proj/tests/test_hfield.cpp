#include "h3/hfield.hpp"

#include <doctest.h>

#include <random>

using namespace h3;

namespace {

HElem random_h(std::mt19937_64 &rng)
{
    auto r = [&] { return Rat(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 7) + 1); };
    HElem h;
    for (auto &k : h.e) {
        k = KElem(r(), r());
        k.x.canonicalize();
        k.y.canonicalize();
    }
    return h;
}

}

TEST_CASE("defining relation of xi")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        HField F = HField::of(P);
        HElem xi = h_xi(), xi2 = h_mul(F, xi, xi);
        HElem expect = h_neg(h_add(h_scale(F, xi, F.c1), h_const(F.c0)));
        CHECK(h_mul(F, xi, xi2) == expect);
        CHECK(h_mul(F, xi2, h_int(1)) == xi2);
    }
}

TEST_CASE("relative norm of 1 - alpha^k xi is pi_k")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        HField F = HField::of(P);
        for (unsigned long k = 1; k <= 50; k++)
            CHECK(norm_HK(F, p_k_elem(P, k)) == to_k(pi_k(P, k)));
    }
}

TEST_CASE("ring axioms on random elements")
{
    std::mt19937_64 rng(11);
    for (int c : {1, 2}) {
        HField F = HField::of(shipped_case(c));
        for (int i = 0; i < 60; i++) {
            HElem x = random_h(rng), y = random_h(rng), z = random_h(rng);
            CHECK(h_mul(F, x, y) == h_mul(F, y, x));
            CHECK(h_mul(F, h_mul(F, x, y), z) == h_mul(F, x, h_mul(F, y, z)));
            CHECK(h_mul(F, x, h_add(y, z)) == h_add(h_mul(F, x, y), h_mul(F, x, z)));
            if (!x.is_zero()) {
                CHECK(h_mul(F, x, h_inv(F, x)) == h_int(1));
                CHECK(h_div(F, h_mul(F, x, y), x) == y);
            }
            CHECK(norm_HK(F, h_mul(F, x, y)) == k_mul(F.D, norm_HK(F, x), norm_HK(F, y)));
            CHECK(h_pow(F, x, 3) == h_mul(F, x, h_mul(F, x, x)));
        }
    }
}

TEST_CASE("substitution by xi is the identity")
{
    std::mt19937_64 rng(5);
    HField F = HField::of(shipped_case(1));
    HElem x = random_h(rng);
    CHECK(h_subst(F, x, h_xi()) == x);
}

TEST_CASE("integrality")
{
    HField F = HField::of(shipped_case(1));
    CHECK(h_is_integral(F, h_xi()));
    CHECK(h_is_integral(F, h_const(KElem(Rat(1, 2), Rat(1, 2)))));
    CHECK_FALSE(h_is_integral(F, h_const(KElem(Rat(1, 2), Rat(0)))));
    CHECK_FALSE(h_is_integral(F, h_scale(F, h_xi(), KElem(Rat(1, 2)))));
    CHECK(k_is_integral(KElem(Rat(3, 2), Rat(-1, 2))));
    CHECK_FALSE(k_is_integral(KElem(Rat(3, 2), Rat(1))));
    HElem h;
    h.e[1] = KElem(Rat(1, 4), Rat(3, 46));
    CHECK(h_den(h) == 92);
}

TEST_CASE("absolute norm of 1 - alpha^k xi is F_k")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        HField F = HField::of(P);
        for (unsigned long k = 1; k <= 10; k++)
            CHECK(h_absnorm(F, p_k_elem(P, k)) == Rat(F_k(P, k)));
    }
}

TEST_CASE("rational text format")
{
    CHECK(rat_str(Rat(-3, 2)) == "-3/2");
    CHECK(rat_str(Rat(5)) == "5");
    CHECK(rat_parse("-3/2") == Rat(-3, 2));
    CHECK(rat_parse("17") == Rat(17));
    CHECK_THROWS(rat_parse("1/0"));
    CHECK_THROWS(rat_parse("abc"));
    CHECK_THROWS(rat_parse(""));
}
