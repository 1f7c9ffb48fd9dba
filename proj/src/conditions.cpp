#include "h3/conditions.hpp"

#include <algorithm>
#include <numeric>

namespace h3 {

bool ConditionTable::admissible(unsigned long k) const
{
    return k >= 2 && std::binary_search(residues.begin(), residues.end(), k % M) &&
           !std::binary_search(exceptions.begin(), exceptions.end(), k);
}

std::vector<unsigned long> compute_T0(const SeqParams &P, const CurveData &c, unsigned long *bound)
{
    HField F = HField::of(P);
    Int d = h_den(c.disc_E);
    Rat n = h_absnorm(F, h_scale(F, c.disc_E, KElem(Rat(d))));
    if (sgn(n) == 0)
        throw derivation_error("disc(E) vanishes");
    // p_k | disc(E) forces F_k | N(d disc E)
    Int N = abs(Rat(n).get_num());
    std::vector<unsigned long> out;
    unsigned long k = 1;
    for (;; k++) {
        Int Fk = F_k(P, k);
        if (Fk > N)
            break;
        Int g;
        mpz_gcd(g.get_mpz_t(), Fk.get_mpz_t(), N.get_mpz_t());
        if (g == 1)
            continue;
        if (h_is_integral(F, h_div(F, c.disc_E, p_k_elem(P, k))))
            out.push_back(k);
    }
    if (bound)
        *bound = k - 1;
    return out;
}

static std::string factored(const Factorization &f)
{
    std::string s;
    for (auto &[p, e] : f) {
        if (!s.empty())
            s += " * ";
        s += p.get_str();
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

static PeriodTable table_for(const SeqParams &P, const HElem &a, const std::set<int> &S, bool twist, const char *name,
                             SymbolProvenance *prov)
{
    if (a.is_zero())
        throw derivation_error(std::string(name) + " vanishes");
    SymbolEngine eng(P, a);
    PeriodTable T = symbol_period(P, eng, S, twist);
    if (prov) {
        prov->name = name;
        prov->norm = factored(eng.norm_factors());
        prov->primes.clear();
        for (auto &ls : eng.locals())
            prov->primes.push_back(ls.l.describe() + " ord=" + std::to_string(ls.ord) +
                                   " period=" + std::to_string(ls.period));
        prov->M = T.M;
        prov->residues = T.residues;
    }
    return T;
}

PeriodTable compute_T1(const SeqParams &P, const CurveData &c, SymbolProvenance *prov)
{
    HElem g6 = h_scale(HField::of(P), c.gamma3, KElem(Rat(6)));
    return table_for(P, g6, {1}, true, "6*gamma3", prov);
}

PeriodTable compute_T2(const SeqParams &P, const CurveData &c, SymbolProvenance *prov)
{
    return table_for(P, c.disc_f, {-1, 0}, false, "disc_f", prov);
}

ConditionTable combine(const std::vector<unsigned long> &T0, const PeriodTable &T1, const PeriodTable &T2)
{
    unsigned long M = std::lcm(T1.M, T2.M);
    std::vector<bool> member(M);
    for (unsigned long k = 1; k <= M; k++)
        member[k - 1] = T1.contains(k) && T2.contains(k);
    PeriodTable T = minimal_period(member, M);
    ConditionTable C;
    C.M = T.M;
    C.residues = T.residues;
    C.exceptions = T0;
    std::sort(C.exceptions.begin(), C.exceptions.end());
    if (C.residues.empty())
        throw derivation_error("condition table is empty");
    return C;
}

ConditionTable compute_conditions(const SeqParams &P, const CurveData &c)
{
    unsigned long bound = 0;
    auto T0 = compute_T0(P, c, &bound);
    SymbolProvenance p1, p2;
    PeriodTable T1 = compute_T1(P, c, &p1), T2 = compute_T2(P, c, &p2);
    ConditionTable C = combine(T0, T1, T2);
    C.provenance = {p1, p2};
    C.t0_bound = bound;
    return C;
}

}
