#pragma once

#include "h3/hfield.hpp"

#include <array>
#include <string>
#include <vector>

namespace h3 {

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct derivation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveData {
    HElem j, A, B, beta, gamma3;
    // codomain of the isogeny with kernel E[lambda_bar]
    HElem Aprime, Bprime;
    // 2-torsion x-coordinates generating E[lambda] and E[lambda_bar]
    HElem x_lambda, x_lambda_bar;
    // generator of E'[lambda]
    HElem x0;
    // f = f[0] x^2 + f[1] x + f[2]
    std::array<HElem, 3> f_coeffs;
    HElem disc_f, disc_E;
};

struct GammaSign {
    long p = 0;
    QuadInt pi;
    int eps = 0, sigma = 0;
    bool negated = false;
};

struct Derivation {
    CurveData curve;
    std::vector<Int> class_poly; // low to high, monic
    GammaSign sign;
    bool analytic_labels_agree = false;
    long aux_prime = 0;
    std::vector<long> cm_primes;
    unsigned precision_bits = 0;
};

// Hilbert class polynomial, coefficients low to high
std::vector<Int> class_poly(long D, unsigned bits = 1200);
HElem hd_eval(const SeqParams &P, const std::vector<Int> &HD, const HElem &x);

// the root of H_D lying in Q(xi)
HElem j_in_H(const SeqParams &P, const std::vector<Int> &HD, unsigned bits = 1200);
// the three K-automorphisms of H as images of xi, identity first
std::vector<HElem> xi_conjugates(const SeqParams &P, unsigned bits = 1200);

void curve_with_square_B(const SeqParams &P, const HElem &j, HElem &A, HElem &B, HElem &beta);
HElem gamma3_with_sign(const SeqParams &P, const HElem &j, const HElem &A, const HElem &B, GammaSign *report = nullptr,
                       unsigned long seed = 1, unsigned bits = 1200);
// roots of x^3 + A x + B in H
std::vector<HElem> two_torsion(const SeqParams &P, const HElem &A, const HElem &B, unsigned bits = 1200);
// fills x_lambda and x_lambda_bar via the Artin action at lambda_bar; returns the analytic cross-check verdict
bool identify_kernel_lambda_bar(const SeqParams &P, CurveData &c, unsigned bits = 1200);
void velu_dual_numerator(const SeqParams &P, CurveData &c);

Derivation derive_curve(const SeqParams &P, unsigned long seed = 1);

// exact invariants; names of the failed ones
std::vector<std::string> curve_invariant_failures(const SeqParams &P, const CurveData &c, const std::vector<Int> &HD);
// phi_hat(phi(R)) = [2]R on random points modulo a prime of degree one; returns that prime
long dual_composition_check(const SeqParams &P, const CurveData &c, unsigned npoints, unsigned long seed);
// #E = p + 1 -/+ Tr(pi) at degree-one primes; returns the primes used
std::vector<long> cm_spot_check(const SeqParams &P, const CurveData &c, unsigned count);

}
