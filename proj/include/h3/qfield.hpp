#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace h3 {

using Int = mpz_class;
using Rat = mpq_class;

struct param_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (a + b*sqrt(D))/2 with a = b mod 2
struct QuadInt {
    Int a, b;
    long D = 0;

    QuadInt() = default;
    QuadInt(Int a_, Int b_, long D_);
    static QuadInt from_int(const Int &n, long D) { return QuadInt(2 * n, 0, D); }

    bool operator==(const QuadInt &o) const { return D == o.D && a == o.a && b == o.b; }
    std::string str() const;
};

QuadInt qi_add(const QuadInt &x, const QuadInt &y);
QuadInt qi_sub(const QuadInt &x, const QuadInt &y);
QuadInt qi_neg(const QuadInt &x);
QuadInt qi_mul(const QuadInt &x, const QuadInt &y);
QuadInt qi_pow(const QuadInt &x, unsigned long n);
QuadInt qi_conj(const QuadInt &x);
Int qi_norm(const QuadInt &x);
inline Int qi_trace(const QuadInt &x) { return x.a; }

// x + y*sqrt(D), rational coordinates
struct KElem {
    Rat x, y;
    KElem() = default;
    KElem(Rat x_, Rat y_ = 0) : x(std::move(x_)), y(std::move(y_)) {}
    bool operator==(const KElem &o) const { return x == o.x && y == o.y; }
    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

KElem to_k(const QuadInt &q);
KElem k_add(const KElem &u, const KElem &v);
KElem k_sub(const KElem &u, const KElem &v);
KElem k_neg(const KElem &u);
KElem k_mul(long D, const KElem &u, const KElem &v);
KElem k_inv(long D, const KElem &u);
Rat k_norm(long D, const KElem &u);

struct SeqParams {
    int case_id = 0;
    long D = 0;
    QuadInt c0, c1, alpha;
    long p_sign = 0;
};

SeqParams shipped_case(int case_id);

QuadInt pi_k(const SeqParams &P, unsigned long k);
Int F_k(const SeqParams &P, unsigned long k);

struct Cofactor {
    Int N_cof, C;
    unsigned long e2 = 0;
};
Cofactor cofactor_Ck(const SeqParams &P, unsigned long k);

bool norm_gate(const SeqParams &P, unsigned long k);
int epsilon(const QuadInt &pi);
int epsilon_k(const SeqParams &P, unsigned long k);

// checks the SeqParams invariants; throws param_error
void validate(const SeqParams &P);

}
