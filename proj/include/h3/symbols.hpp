#pragma once

#include "h3/factor.hpp"
#include "h3/galois.hpp"
#include "h3/hfield.hpp"

#include <set>
#include <string>
#include <vector>

namespace h3 {

enum class PrimeKind { split, inert, ramified, dyadic };

// a prime of O_H with an explicit embedding of O_K[xi] into (Z/q^n)[Y]/(m)
struct PrimeIdealH {
    Int q;
    int f = 1; // residue degree over Q
    int e = 1; // ramification over Q
    PrimeKind kind = PrimeKind::split;
    int index = 0;
    GRing R;
    GRing::Elt s, x, alpha; // images of sqrt(D), xi, alpha
    Int N_l;                // q^f - 1

    std::string describe() const;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// all primes above an odd rational prime q, embeddings at precision q^prec
std::vector<PrimeIdealH> primes_over(const SeqParams &P, const Int &q, unsigned prec);
// the two primes above 2 (inert in H/K): lambda (contains alpha) first
std::vector<PrimeIdealH> primes_over_2(const SeqParams &P, unsigned prec);

// image of an element whose coefficient denominators are prime to q
GRing::Elt image(const SeqParams &P, const PrimeIdealH &l, const HElem &a);
GRing::Elt pk_image(const SeqParams &P, const PrimeIdealH &l, unsigned long k);
long ord_at(const PrimeIdealH &l, const GRing::Elt &v);

struct DividingPrime {
    PrimeIdealH l;
    long ord = 0;
};
// odd primes with nonzero valuation; degree formula checked on the integral rescaling
std::vector<DividingPrime> primes_above(const SeqParams &P, const HElem &a);

int residue_symbol_img(const PrimeIdealH &l, const GRing::Elt &v);
int residue_symbol(const SeqParams &P, const PrimeIdealH &l, const HElem &x);
// (a, b) at a prime above 2; b must be a unit there
int hilbert_symbol_2(const SeqParams &P, const PrimeIdealH &l, const HElem &a, const HElem &b);
int hilbert_symbol_2_img(const PrimeIdealH &l, const GRing::Elt &a, const GRing::Elt &b);

Int multiplicative_order(const GRing &R, const GRing::Elt &x, const Int &group_order);

struct LocalSymbol {
    PrimeIdealH l;
    long ord = 0;
    bool dyadic = false;
    unsigned long period = 1;
    std::vector<int> table; // value for k = j mod period
    // residue ring (mod 8 above 2), images of alpha and xi there, exponent of its unit group
    GRing small;
    GRing::Elt alpha_small, x_small, a_img;
    Int unit_exp;
};

class SymbolEngine {
  public:
    SymbolEngine(const SeqParams &P, const HElem &a, unsigned long budget = 10000000);

    int s_k(unsigned long k) const;
    // recomputed from alpha^k without the period tables
    int s_k_direct(unsigned long k) const;
    unsigned long period_bound() const { return bound_; }
    const std::vector<LocalSymbol> &locals() const { return locals_; }
    const Factorization &norm_factors() const { return norm_factors_; }

  private:
    SeqParams P_;
    HElem a_, a_int_;
    std::vector<LocalSymbol> locals_;
    Factorization norm_factors_;
    unsigned long bound_ = 2;
};

int s_k(const SeqParams &P, const HElem &a, unsigned long k);

struct PeriodTable {
    unsigned long M = 1;
    std::vector<unsigned long> residues;
    unsigned long N = 1; // period bound scanned
    bool contains(unsigned long k) const;
};

// minimal M dividing the bound with k in T iff value in S (times eps_k when twisted)
PeriodTable symbol_period(const SeqParams &P, const SymbolEngine &eng, const std::set<int> &S, bool sign_twist);
// smallest divisor of N for which the membership function is periodic
PeriodTable minimal_period(const std::vector<bool> &member, unsigned long N);

}
