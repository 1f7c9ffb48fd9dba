#include "h3/prover.hpp"

namespace h3 {

bool miller_rabin(const Int &n, unsigned rounds, unsigned long seed)
{
    if (n < 2)
        return false;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(seed);
    Int nm1 = n - 1, span = n - 3;
    for (unsigned i = 0; i < rounds; i++) {
        Int a = rng.get_z_range(span) + 2, x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1)
            continue;
        bool comp = true;
        for (unsigned long j = 1; j < s && comp; j++) {
            x = x * x % n;
            if (x == nm1)
                comp = false;
        }
        if (comp)
            return false;
    }
    return true;
}

}
