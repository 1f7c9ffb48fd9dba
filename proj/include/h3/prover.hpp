#pragma once

#include "h3/hfield.hpp"

#include <functional>
#include <string>

namespace h3 {

struct unsupported_k : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Z/N with scratch space; one per thread
class ModCtx {
  public:
    explicit ModCtx(const Int &N);
    const Int &N() const { return N_; }
    const Int &inv2() const { return inv2_; }
    void mul(Int &r, const Int &a, const Int &b);
    void sqr(Int &r, const Int &a);
    void add(Int &r, const Int &a, const Int &b);
    void sub(Int &r, const Int &a, const Int &b);
    Int red(const Int &a) const;
    Int pow(const Int &a, const Int &e) const;
    // false when a shares a factor with N
    bool inv(Int &r, const Int &a) const;

  private:
    Int N_, inv2_, t_;
};

// N = 3 mod 4 or N = 5 mod 8; caller verifies r^2 = a
Int sqrt_mod(const Int &a, const Int &N);

// sqrt(D) -> r, xi -> xi_res, denominators inverted mod N; false if one is not invertible
bool reduce_helem(Int &out, const HElem &e, const Int &r, const Int &xi_res, const ModCtx &ctx);

struct ProjPoint {
    Int X, Y, Z;
};

struct Curve {
    Int A, B;
};

// sums involving points congruent modulo some prime factor of N multiply a zero
// divisor into acc; exact O (Z = 0 mod N) is handled
ProjPoint ec_double(const ProjPoint &P, const Curve &E, ModCtx &ctx);
ProjPoint ec_add(const ProjPoint &P, const ProjPoint &Q, const Curve &E, ModCtx &ctx, Int *acc = nullptr);
// odd part by a fixed 4-bit window, then the doublings
ProjPoint scalar_mul(const ProjPoint &P, const Int &n, const Curve &E, ModCtx &ctx, Int *acc = nullptr);
bool strongly_nonzero(const ProjPoint &Q, const ModCtx &ctx);
bool on_curve(const ProjPoint &P, const Curve &E, ModCtx &ctx);

struct ProverInput {
    SeqParams P;
    HElem A, B, beta;
};

struct Certificate {
    int case_id = 0;
    unsigned long k = 0;
    Int F, r, xi_res, A, B, beta, C, QX, QY, QZ, Z2;
    unsigned long e2 = 0, scalar_bits = 0;
    int sign_flips = 0;
    bool verdict = false;
    std::string reason;
    double wall_ms = 0;
};

struct ProveResult {
    bool verdict = false;
    Certificate cert;
};

// throws unsupported_k when the gates fail or admissible(k) is false
ProveResult prove(const ProverInput &in, unsigned long k, const std::function<bool(unsigned long)> &admissible = {});

// independent re-derivation with a plain binary ladder; true if the certificate's verdict and Q are reproduced
bool replay(const ProverInput &in, const Certificate &c, std::string *why = nullptr);

// every arithmetic step of a run that reaches the final check, without the early exits;
// this is the cost of prove() on a prime F_k. Returns wall milliseconds.
double full_path_ms(const ProverInput &in, unsigned long k);

bool miller_rabin(const Int &n, unsigned rounds, unsigned long seed = 0x5eed);

}
