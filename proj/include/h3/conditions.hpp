#pragma once

#include "h3/cmsetup.hpp"
#include "h3/symbols.hpp"

#include <string>
#include <vector>

namespace h3 {

struct SymbolProvenance {
    std::string name;    // "6*gamma3" or "disc_f"
    std::string norm;    // factored absolute norm of the integral rescaling
    std::vector<std::string> primes; // local primes with their valuations and periods
    unsigned long M = 1;
    std::vector<unsigned long> residues;
};

struct ConditionTable {
    unsigned long M = 1;
    std::vector<unsigned long> residues; // sorted, in [0, M)
    std::vector<unsigned long> exceptions;
    std::vector<SymbolProvenance> provenance;
    unsigned long t0_bound = 0; // largest k tested for T0

    bool admissible(unsigned long k) const;
};

// k >= 1 with p_k | disc(E); only k with F_k <= |N(disc E)| and gcd(F_k, N(disc E)) != 1 are tested
std::vector<unsigned long> compute_T0(const SeqParams &P, const CurveData &c, unsigned long *bound = nullptr);
PeriodTable compute_T1(const SeqParams &P, const CurveData &c, SymbolProvenance *prov = nullptr);
PeriodTable compute_T2(const SeqParams &P, const CurveData &c, SymbolProvenance *prov = nullptr);
ConditionTable combine(const std::vector<unsigned long> &T0, const PeriodTable &T1, const PeriodTable &T2);
ConditionTable compute_conditions(const SeqParams &P, const CurveData &c);

}
