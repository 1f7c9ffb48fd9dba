#pragma once

#include "h3/qfield.hpp"

#include <utility>
#include <vector>

namespace h3 {

struct unfactored_error : std::runtime_error {
    Int residue;
    explicit unfactored_error(const Int &r)
        : std::runtime_error("unfactored residue " + r.get_str()), residue(r) {}
};

using Factorization = std::vector<std::pair<Int, unsigned>>;

// |n| factored; trial division to trial_bound, then Pollard-Brent
Factorization factor(const Int &n, unsigned long trial_bound = 1000000, unsigned long rho_iters = 2000000);
bool is_probable_prime(const Int &n);
std::vector<Int> divisors(const Factorization &f);
unsigned long valuation(const Int &n, const Int &p);

}
