#pragma once

#include "h3/qfield.hpp"

#include <array>
#include <string>

namespace h3 {

// H = K(xi), xi^3 + c1 xi + c0 = 0
struct HField {
    long D = 0;
    KElem c0, c1;
    static HField of(const SeqParams &P) { return HField{P.D, to_k(P.c0), to_k(P.c1)}; }
};

struct HElem {
    std::array<KElem, 3> e;
    bool operator==(const HElem &o) const { return e == o.e; }
    bool is_zero() const { return e[0].is_zero() && e[1].is_zero() && e[2].is_zero(); }
};

HElem h_const(const KElem &k);
inline HElem h_int(const Int &n) { return h_const(KElem(Rat(n))); }
HElem h_xi();

HElem h_add(const HElem &x, const HElem &y);
HElem h_sub(const HElem &x, const HElem &y);
HElem h_neg(const HElem &x);
HElem h_scale(const HField &F, const HElem &x, const KElem &k);
HElem h_mul(const HField &F, const HElem &x, const HElem &y);
HElem h_pow(const HField &F, const HElem &x, unsigned long n);
HElem h_inv(const HField &F, const HElem &x);
HElem h_div(const HField &F, const HElem &x, const HElem &y);

// multiplication-by-x matrix on 1, xi, xi^2 (column j = x * xi^j)
std::array<std::array<KElem, 3>, 3> h_matrix(const HField &F, const HElem &x);
KElem norm_HK(const HField &F, const HElem &x);
Rat h_absnorm(const HField &F, const HElem &x);
bool k_is_integral(const KElem &k);
// char poly over K has O_K coefficients
bool h_is_integral(const HField &F, const HElem &x);

// image under xi -> img
HElem h_subst(const HField &F, const HElem &x, const HElem &img);
// lcm of all coefficient denominators
Int h_den(const HElem &x);

HElem p_k_elem(const SeqParams &P, unsigned long k);

std::string rat_str(const Rat &r);
Rat rat_parse(const std::string &s);

}
