#include "h3/cmsetup.hpp"
#include "h3/numeric.hpp"

#include "oracle_data.hpp"

#include <doctest.h>

using namespace h3;
using h3::testing::oracle;
using h3::testing::oracle_curve;

namespace {

const Derivation &derived(int c)
{
    static Derivation d[2] = {derive_curve(shipped_case(1)), derive_curve(shipped_case(2))};
    return d[c - 1];
}

}

TEST_CASE("class polynomials")
{
    auto h23 = class_poly(-23);
    CHECK(h23 == std::vector<Int>{Int("12771880859375"), Int("-5151296875"), Int("3491750"), Int(1)});
    auto h31 = class_poly(-31);
    CHECK(h31 == std::vector<Int>{Int("1566028350940383"), Int("-58682638134"), Int("39491307"), Int(1)});
    for (int c : {1, 2}) {
        auto oc = oracle(c);
        std::vector<Int> o;
        for (auto &s : oc["class_poly"])
            o.emplace_back(s.get<std::string>());
        auto h = class_poly(shipped_case(c).D, 2000);
        REQUIRE(h.size() == o.size());
        for (size_t i = 0; i < h.size(); i++)
            CHECK_MESSAGE(h[i] == o[i], h[i].get_str(), " vs ", o[i].get_str());
    }
}

TEST_CASE("numeric j agrees with the rational CM values")
{
    num::set_precision_bits(300);
    // j((1 + sqrt(-7))/2) = -3375, j(i) = 1728
    num::Cx tau{num::Real(0.5), sqrt(num::Real(7)) / 2};
    num::Cx j = num::j_invariant(tau);
    num::Real tol("1e-60");
    bool ok = true;
    CHECK(num::nearest(j.re, tol, ok) == -3375);
    CHECK(ok);
    CHECK(boost::multiprecision::abs(j.im) < tol);
    num::Cx i{num::Real(0), num::Real(1)};
    CHECK(num::nearest(num::j_invariant(i).re, tol, ok) == 1728);
    CHECK(ok);
}

TEST_CASE("derived curve matches the oracle")
{
    for (int c : {1, 2}) {
        const CurveData &cd = derived(c).curve;
        CHECK(cd.j == oracle_curve(c, "j"));
        CHECK(cd.A == oracle_curve(c, "A"));
        CHECK(cd.B == oracle_curve(c, "B"));
        CHECK(cd.beta == oracle_curve(c, "beta"));
        CHECK(cd.gamma3 == h_neg(oracle_curve(c, "gamma3_root")));
        CHECK(cd.x_lambda == oracle_curve(c, "x_lambda"));
        CHECK(cd.x_lambda_bar == oracle_curve(c, "x_lambda_bar"));
        CHECK(cd.x0 == oracle_curve(c, "x0"));
        CHECK(cd.disc_f == oracle_curve(c, "disc_f"));
    }
}

TEST_CASE("derivation invariants")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        HField F = HField::of(P);
        const Derivation &d = derived(c);
        const CurveData &cd = d.curve;
        CHECK(curve_invariant_failures(P, cd, d.class_poly).empty());
        CHECK(d.analytic_labels_agree);
        CHECK(d.sign.p == P.p_sign);
        CHECK(d.sign.negated);
        // j is a root of H_D with norm -H_D(0)
        CHECK(hd_eval(P, d.class_poly, cd.j).is_zero());
        CHECK(norm_HK(F, cd.j) == KElem(Rat(-d.class_poly[0])));
        // beta^2 = B, gamma3^2 = j - 1728, kernel generators are 2-torsion, roots sum to zero
        CHECK(h_mul(F, cd.beta, cd.beta) == cd.B);
        auto rts = two_torsion(P, cd.A, cd.B);
        REQUIRE(rts.size() == 3);
        CHECK(h_add(h_add(rts[0], rts[1]), rts[2]).is_zero());
        CHECK(h_mul(F, cd.gamma3, cd.gamma3) == h_sub(cd.j, h_int(1728)));
        int hits = 0;
        for (auto &r : rts)
            hits += (r == cd.x_lambda) + (r == cd.x_lambda_bar) * 10;
        CHECK(hits == 11);
        // j(E) from A, B
        HElem A3 = h_pow(F, cd.A, 3), B2 = h_mul(F, cd.B, cd.B);
        HElem den = h_add(h_scale(F, A3, KElem(Rat(4))), h_scale(F, B2, KElem(Rat(27))));
        CHECK(h_div(F, h_scale(F, A3, KElem(Rat(6912))), den) == cd.j);
        CHECK(h_is_integral(F, cd.A));
        CHECK(h_is_integral(F, cd.B));
    }
}

TEST_CASE("xi conjugates permute the cubic's roots")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        HField F = HField::of(P);
        auto cj = xi_conjugates(P);
        REQUIRE(cj.size() == 3);
        CHECK(cj[0] == h_xi());
        for (auto &x : cj) {
            HElem v = h_add(h_add(h_pow(F, x, 3), h_mul(F, h_const(F.c1), x)), h_const(F.c0));
            CHECK(v.is_zero());
        }
        CHECK(h_add(h_add(cj[0], cj[1]), cj[2]).is_zero());
    }
}

TEST_CASE("derivation is deterministic across seeds")
{
    Derivation d = derive_curve(shipped_case(2), 77);
    CHECK(d.curve.A == derived(2).curve.A);
    CHECK(d.curve.x0 == derived(2).curve.x0);
    CHECK(d.curve.gamma3 == derived(2).curve.gamma3);
    CHECK(d.curve.disc_f == derived(2).curve.disc_f);
}

TEST_CASE("dual isogeny composes to doubling and CM traces match")
{
    for (int c : {1, 2}) {
        SeqParams P = shipped_case(c);
        const CurveData &cd = derived(c).curve;
        CHECK(dual_composition_check(P, cd, 20, 3) >= 101);
        auto ps = cm_spot_check(P, cd, 3);
        CHECK(ps.size() == 3);
    }
}

TEST_CASE("tampered curves are caught")
{
    SeqParams P = shipped_case(1);
    const Derivation &d = derived(1);
    CurveData bad = d.curve;
    bad.B = h_add(bad.B, h_int(1));
    CHECK_FALSE(curve_invariant_failures(P, bad, d.class_poly).empty());
    bad = d.curve;
    std::swap(bad.x_lambda, bad.x_lambda_bar);
    CHECK_FALSE(curve_invariant_failures(P, bad, d.class_poly).empty());
    bad = d.curve;
    bad.x0 = h_add(bad.x0, h_int(1));
    CHECK_FALSE(curve_invariant_failures(P, bad, d.class_poly).empty());
}
