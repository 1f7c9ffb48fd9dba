#include "h3/symbols.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace h3 {

static Int md(const Int &a, const Int &m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

static Int rat_mod(const Rat &r, const Int &m)
{
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), r.get_den_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("denominator not invertible at this prime");
    return md(r.get_num() * inv, m);
}

static Int int_coeff(const QuadInt &c)
{
    if (sgn(c.b) != 0)
        throw param_error("c0 and c1 must be rational integers");
    return c.a / 2;
}

static Poly cubic_poly(const SeqParams &P) { return Poly{int_coeff(P.c0), int_coeff(P.c1), 0, 1}; }

std::string PrimeIdealH::describe() const
{
    static const char *kinds[] = {"split", "inert", "ramified", "dyadic"};
    return "q=" + q.get_str() + " f=" + std::to_string(f) + " e=" + std::to_string(e) + " " +
           kinds[static_cast<int>(kind)] + " #" + std::to_string(index);
}

static void check_embedding(const SeqParams &P, PrimeIdealH &l)
{
    const GRing &R = l.R;
    if (!R.eq(R.mul(l.s, l.s), R.from_int(P.D)))
        throw std::runtime_error("embedding: sqrt(D) image wrong at " + l.describe());
    if (!R.is_zero(R.eval(cubic_poly(P), l.x)))
        throw std::runtime_error("embedding: xi image not a root at " + l.describe());
    Int qf;
    mpz_pow_ui(qf.get_mpz_t(), l.q.get_mpz_t(), l.f);
    l.N_l = qf - 1;
}

std::vector<PrimeIdealH> primes_over(const SeqParams &P, const Int &q, unsigned prec)
{
    if (q == 2)
        throw std::domain_error("primes_over: use primes_over_2");
    if (prec < 1)
        prec = 1;
    Poly cubic = cubic_poly(P);
    Poly sq{Int(-P.D), 0, 1};
    std::vector<PrimeIdealH> out;
    std::vector<Int> roots = roots_mod_prime(cubic, q);
    Int Dq = md(Int(P.D), q);

    if (sgn(Dq) == 0) {
        GRing Z1(q, prec + 1, Poly{0, 1});
        Poly dcub{int_coeff(P.c1), 0, 3};
        Int b = -1;
        for (const auto &r : roots)
            if (sgn(poly_eval(dcub, r, q)) != 0)
                b = r;
        if (roots.size() != 2 || b < 0)
            throw std::runtime_error("ramified prime: unexpected cubic factorization");
        Int bl = Z1.newton_root(cubic, Z1.from_int(b))[0];
        Int delta = md(-3 * bl * bl - 4 * int_coeff(P.c1), Z1.mod);
        if (!mpz_divisible_p(delta.get_mpz_t(), q.get_mpz_t()))
            throw std::runtime_error("ramified prime: double root discriminant");
        GRing Zn(q, prec, Poly{0, 1});
        Int Dp = Int(P.D) / q;
        Int t = md(delta / q, Zn.mod) * [&] {
            Int i;
            mpz_invert(i.get_mpz_t(), Int(4 * Dp).get_mpz_t(), Zn.mod.get_mpz_t());
            return i;
        }();
        t = md(t, Zn.mod);
        Int w0 = sqrt_mod_prime(t, q);
        Int w = Zn.newton_root(Poly{-t, 0, 1}, Zn.from_int(w0))[0];
        Int inv2;
        mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), Zn.mod.get_mpz_t());
        GRing R(q, prec, sq);
        Int mb = md(-bl * inv2, R.mod);
        std::vector<GRing::Elt> xs{GRing::Elt{md(bl, R.mod), 0}, GRing::Elt{mb, md(w, R.mod)},
                                   GRing::Elt{mb, md(-w, R.mod)}};
        for (size_t i = 0; i < xs.size(); i++) {
            PrimeIdealH l;
            l.q = q;
            l.f = 1;
            l.e = 2;
            l.kind = PrimeKind::ramified;
            l.index = static_cast<int>(i);
            l.R = R;
            l.s = R.gen();
            l.x = xs[i];
            out.push_back(l);
        }
    } else if (mpz_legendre(Dq.get_mpz_t(), q.get_mpz_t()) == 1) {
        GRing Zn(q, prec, Poly{0, 1});
        Int s0 = sqrt_mod_prime(Dq, q);
        for (int sgn_s = 0; sgn_s < 2; sgn_s++) {
            Int sr = sgn_s ? md(-s0, q) : s0;
            GRing::Elt s = Zn.newton_root(sq, Zn.from_int(sr));
            if (roots.size() == 3) {
                for (const auto &r : roots) {
                    PrimeIdealH l;
                    l.q = q;
                    l.f = 1;
                    l.kind = PrimeKind::split;
                    l.index = static_cast<int>(out.size());
                    l.R = Zn;
                    l.s = s;
                    l.x = Zn.newton_root(cubic, Zn.from_int(r));
                    out.push_back(l);
                }
            } else if (roots.empty()) {
                PrimeIdealH l;
                l.q = q;
                l.f = 3;
                l.kind = PrimeKind::split;
                l.index = static_cast<int>(out.size());
                l.R = GRing(q, prec, cubic);
                l.s = l.R.from_int(s[0]);
                l.x = l.R.gen();
                out.push_back(l);
            } else {
                throw std::runtime_error("split prime: unexpected cubic factorization");
            }
        }
    } else {
        GRing R(q, prec, sq);
        std::vector<GRing::Elt> starts;
        for (const auto &r : roots)
            starts.push_back(R.from_int(r));
        if (roots.size() == 1) {
            const Int &r = roots[0];
            Int delta = md(-3 * r * r - 4 * int_coeff(P.c1), q), dinv, inv2;
            mpz_invert(dinv.get_mpz_t(), Dq.get_mpz_t(), q.get_mpz_t());
            mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), q.get_mpz_t());
            Int w0 = sqrt_mod_prime(md(delta * dinv, q), q);
            starts.push_back(GRing::Elt{md(-r * inv2, q), md(w0 * inv2, q)});
            starts.push_back(GRing::Elt{md(-r * inv2, q), md(-w0 * inv2, q)});
        } else if (roots.size() != 3) {
            throw std::runtime_error("inert prime: unexpected cubic factorization");
        }
        for (auto &st : starts) {
            PrimeIdealH l;
            l.q = q;
            l.f = 2;
            l.kind = PrimeKind::inert;
            l.index = static_cast<int>(out.size());
            l.R = R;
            l.s = R.gen();
            l.x = R.newton_root(cubic, st);
            out.push_back(l);
        }
    }
    int total = 0;
    for (auto &l : out) {
        check_embedding(P, l);
        l.alpha = image(P, l, h_const(to_k(P.alpha)));
        total += l.f * l.e;
    }
    if (total != 6)
        throw std::runtime_error("primes over " + q.get_str() + ": degrees do not sum to 6");
    return out;
}

std::vector<PrimeIdealH> primes_over_2(const SeqParams &P, unsigned prec)
{
    if (((P.D % 8) + 8) % 8 != 1)
        throw param_error("2 must split in K");
    Poly cubic = cubic_poly(P);
    if (!roots_mod_prime(cubic, 2).empty())
        throw param_error("primes above 2 must be inert in H/K");
    unsigned top = prec + 3;
    Int s = 1, Dz = P.D;
    for (unsigned i = 3; i < top; i++) {
        Int m;
        mpz_ui_pow_ui(m.get_mpz_t(), 2, i + 1);
        if (sgn(md(s * s - Dz, m)) != 0) {
            Int add;
            mpz_ui_pow_ui(add.get_mpz_t(), 2, i - 1);
            s += add;
        }
    }
    GRing R(2, prec, cubic);
    Int m1;
    mpz_ui_pow_ui(m1.get_mpz_t(), 2, prec + 1);
    std::vector<PrimeIdealH> out(2);
    bool got[2] = {false, false};
    for (int sg = 0; sg < 2; sg++) {
        Int sv = md(sg ? Int(-s) : s, m1);
        Int num = md(P.alpha.a + P.alpha.b * sv, m1);
        if (mpz_odd_p(num.get_mpz_t()))
            throw std::runtime_error("dyadic embedding: odd numerator");
        Int al = num / 2;
        bool nonunit = mpz_even_p(al.get_mpz_t());
        PrimeIdealH &l = out[nonunit ? 0 : 1];
        got[nonunit ? 0 : 1] = true;
        l.q = 2;
        l.f = 3;
        l.kind = PrimeKind::dyadic;
        l.index = nonunit ? 0 : 1;
        l.R = R;
        l.s = R.from_int(sv);
        l.x = R.gen();
        l.alpha = R.from_int(al);
    }
    if (!got[0] || !got[1])
        throw std::runtime_error("dyadic embedding: alpha must lie in exactly one prime above 2");
    for (auto &l : out)
        check_embedding(P, l);
    return out;
}

GRing::Elt image(const SeqParams &, const PrimeIdealH &l, const HElem &a)
{
    const GRing &R = l.R;
    GRing::Elt r = R.zero(), xp = R.from_int(1);
    for (int i = 0; i < 3; i++) {
        const KElem &k = a.e[i];
        if (!k.is_zero()) {
            GRing::Elt c = R.add(R.from_int(rat_mod(k.x, R.mod)), R.scale(l.s, rat_mod(k.y, R.mod)));
            r = R.add(r, R.mul(c, xp));
        }
        xp = R.mul(xp, l.x);
    }
    return r;
}

GRing::Elt pk_image(const SeqParams &, const PrimeIdealH &l, unsigned long k)
{
    const GRing &R = l.R;
    GRing::Elt ak = R.pow(l.alpha, Int(k));
    return R.sub(R.from_int(1), R.mul(ak, l.x));
}

long ord_at(const PrimeIdealH &l, const GRing::Elt &v)
{
    if (l.kind == PrimeKind::ramified) {
        GRing Z(l.q, l.R.n, Poly{0, 1});
        long u = Z.coeff_val(GRing::Elt{v[0]}), w = Z.coeff_val(GRing::Elt{v[1]});
        return std::min(2 * u, 2 * w + 1);
    }
    return l.R.coeff_val(v);
}

// residue field and the reduced element
static std::pair<GRing, GRing::Elt> residue(const PrimeIdealH &l, const GRing::Elt &v)
{
    if (l.kind == PrimeKind::ramified)
        return {GRing(l.q, 1, Poly{0, 1}), GRing::Elt{md(v[0], l.q)}};
    GRing F(l.q, 1, l.R.m);
    GRing::Elt r(v.size());
    for (size_t i = 0; i < v.size(); i++)
        r[i] = md(v[i], l.q);
    return {F, r};
}

int residue_symbol_img(const PrimeIdealH &l, const GRing::Elt &v)
{
    auto [F, r] = residue(l, v);
    if (F.is_zero(r))
        return 0;
    Int qf;
    mpz_pow_ui(qf.get_mpz_t(), l.q.get_mpz_t(), F.deg());
    GRing::Elt e = F.pow(r, (qf - 1) / 2);
    if (F.eq(e, F.from_int(1)))
        return 1;
    if (F.eq(e, F.from_int(-1)))
        return -1;
    throw std::runtime_error("residue_symbol: residue ring is not a field");
}

int residue_symbol(const SeqParams &P, const PrimeIdealH &l, const HElem &x)
{
    if (l.kind == PrimeKind::dyadic)
        throw std::domain_error("residue_symbol at a prime above 2");
    return residue_symbol_img(l, image(P, l, x));
}

namespace {

struct SquareTables {
    std::vector<int> sq_all, sq_unit;
    std::vector<char> is_sq;
};

int idx8(const GRing::Elt &v)
{
    int r = 0;
    for (size_t i = v.size(); i-- > 0;)
        r = r * 8 + static_cast<int>(mpz_fdiv_ui(v[i].get_mpz_t(), 8));
    return r;
}

GRing::Elt from_idx8(int i, int deg)
{
    GRing::Elt v(deg);
    for (int j = 0; j < deg; j++) {
        v[j] = i % 8;
        i /= 8;
    }
    return v;
}

const SquareTables &square_tables(const GRing &R8)
{
    static std::mutex mu;
    static std::map<std::vector<Int>, SquareTables> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(R8.m);
    if (it != cache.end())
        return it->second;
    SquareTables t;
    int d = R8.deg(), size = 1 << (3 * d);
    t.is_sq.assign(size, 0);
    std::set<int> all, unit;
    for (int i = 0; i < size; i++) {
        GRing::Elt z = from_idx8(i, d);
        int s = idx8(R8.mul(z, z));
        t.is_sq[s] = 1;
        all.insert(s);
        bool u = false;
        for (const auto &c : z)
            u = u || mpz_odd_p(c.get_mpz_t());
        if (u)
            unit.insert(s);
    }
    t.sq_all.assign(all.begin(), all.end());
    t.sq_unit.assign(unit.begin(), unit.end());
    return cache.emplace(R8.m, std::move(t)).first->second;
}

}

int hilbert_symbol_2_img(const PrimeIdealH &l, const GRing::Elt &a, const GRing::Elt &b)
{
    const GRing &R = l.R;
    if (R.coeff_val(b) != 0)
        throw std::domain_error("hilbert_symbol_2: b is not a unit");
    unsigned v = R.coeff_val(a);
    if (v >= R.n)
        throw std::domain_error("hilbert_symbol_2: a vanishes at working precision");
    unsigned m = v / 2;
    if (R.n < 2 * m + 3)
        throw std::runtime_error("hilbert_symbol_2: insufficient precision");
    GRing::Elt an(a.size());
    for (size_t i = 0; i < a.size(); i++)
        mpz_fdiv_q_2exp(an[i].get_mpz_t(), md(a[i], R.mod).get_mpz_t(), 2 * m);
    GRing R8(2, 3, R.m);
    int d = R8.deg();
    int ia = idx8(an), ib = idx8(b);
    static std::mutex mu;
    static std::map<std::tuple<std::vector<Int>, int, int>, int> memo;
    auto key = std::make_tuple(R8.m, ia, ib);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }
    const SquareTables &T = square_tables(R8);
    GRing::Elt a8 = from_idx8(ia, d), b8 = from_idx8(ib, d);
    auto hit = [&](const std::vector<int> &xs, const std::vector<int> &ys) {
        for (int x2 : xs) {
            GRing::Elt ax = R8.mul(a8, from_idx8(x2, d));
            for (int y2 : ys)
                if (T.is_sq[idx8(R8.add(ax, R8.mul(b8, from_idx8(y2, d))))])
                    return true;
        }
        return false;
    };
    int r = (hit(T.sq_unit, T.sq_all) || hit(T.sq_all, T.sq_unit)) ? 1 : -1;
    std::lock_guard<std::mutex> lock(mu);
    memo[key] = r;
    return r;
}

int hilbert_symbol_2(const SeqParams &P, const PrimeIdealH &l, const HElem &a, const HElem &b)
{
    if (l.kind != PrimeKind::dyadic)
        throw std::domain_error("hilbert_symbol_2 at an odd prime");
    return hilbert_symbol_2_img(l, image(P, l, a), image(P, l, b));
}

Int multiplicative_order(const GRing &R, const GRing::Elt &x, const Int &group_order)
{
    Int o = group_order;
    if (!R.eq(R.pow(x, o), R.from_int(1)))
        throw std::runtime_error("multiplicative_order: exponent does not annihilate");
    for (const auto &[p, e] : factor(group_order)) {
        (void)e;
        while (mpz_divisible_p(o.get_mpz_t(), p.get_mpz_t()) && R.eq(R.pow(x, o / p), R.from_int(1)))
            o /= p;
    }
    return o;
}

std::vector<DividingPrime> primes_above(const SeqParams &P, const HElem &a)
{
    if (a.is_zero())
        throw std::domain_error("primes_above(0)");
    HField F = HField::of(P);
    Int d = h_den(a);
    HElem ai = h_scale(F, a, KElem(Rat(d * d)));
    Rat nr = abs(h_absnorm(F, ai));
    if (nr.get_den() != 1)
        throw std::runtime_error("primes_above: rescaled element is not integral");
    Int N = nr.get_num();
    std::set<Int> qs;
    if (N > 1)
        for (const auto &[p, e] : factor(N))
            qs.insert(p);
    if (d > 1)
        for (const auto &[p, e] : factor(d))
            qs.insert(p);
    std::vector<DividingPrime> out;
    for (const Int &q : qs) {
        if (q == 2)
            continue;
        unsigned long v = sgn(N) ? valuation(N, q) : 0;
        unsigned long vd = valuation(d, q);
        auto ls = primes_over(P, q, static_cast<unsigned>(v + 2));
        unsigned long deg = 0;
        for (auto &l : ls) {
            long o = ord_at(l, image(P, l, ai));
            deg += static_cast<unsigned long>(l.f) * o;
            long oa = o - 2 * l.e * static_cast<long>(vd);
            if (oa != 0)
                out.push_back({l, oa});
        }
        if (deg != v)
            throw std::runtime_error("degree formula fails at q=" + q.get_str());
    }
    return out;
}

static GRing::Elt pk_small(const LocalSymbol &ls, unsigned long k)
{
    const GRing &R = ls.small;
    Int e = k;
    if (R.coeff_val(ls.alpha_small) == 0)
        e = Int(k) % ls.unit_exp;
    else if (k == 0)
        e = 1;
    GRing::Elt ak = R.pow(ls.alpha_small, e);
    return R.sub(R.from_int(1), R.mul(ak, ls.x_small));
}

static int local_value(const LocalSymbol &ls, unsigned long k)
{
    GRing::Elt pk = pk_small(ls, k);
    if (ls.dyadic)
        return hilbert_symbol_2_img(ls.l, ls.a_img, pk);
    const GRing &F = ls.small;
    if (F.is_zero(pk))
        return 0;
    if (ls.ord % 2 == 0)
        return 1;
    return F.eq(F.pow(pk, ls.unit_exp / 2), F.from_int(1)) ? 1 : -1;
}

SymbolEngine::SymbolEngine(const SeqParams &P, const HElem &a, unsigned long budget) : P_(P), a_(a)
{
    if (a.is_zero())
        throw std::domain_error("s_k(0)");
    HField F = HField::of(P);
    Int d = h_den(a);
    a_int_ = h_scale(F, a, KElem(Rat(d * d)));
    Int N = Rat(abs(h_absnorm(F, a_int_))).get_num();
    if (N > 1)
        norm_factors_ = factor(N);
    unsigned long v2 = 0;
    for (const auto &[p, e] : norm_factors_)
        if (p == 2)
            v2 = e;

    auto rep = [](unsigned long j, unsigned long period) { return j == 0 ? period : j; };
    for (auto &l : primes_over_2(P, static_cast<unsigned>(v2 + 8))) {
        LocalSymbol ls;
        ls.l = l;
        ls.dyadic = true;
        GRing R8(2, 3, l.R.m);
        GRing::Elt al8 = R8.sub(l.alpha, R8.zero());
        ls.small = R8;
        ls.alpha_small = al8;
        ls.x_small = R8.sub(l.x, R8.zero());
        ls.unit_exp = (Int(1) << (3 * R8.deg())) - (Int(1) << (2 * R8.deg()));
        if (R8.coeff_val(al8) == 0) {
            GRing::Elt p = al8;
            unsigned long o = 1;
            while (!R8.eq(p, R8.from_int(1))) {
                p = R8.mul(p, al8);
                if (++o > 512)
                    throw std::runtime_error("dyadic order of alpha");
            }
            ls.period = o;
        } else {
            if (!R8.is_zero(al8))
                throw std::runtime_error("alpha is not divisible by 8 at its dyadic prime");
            ls.period = 1;
        }
        ls.a_img = image(P, l, a_int_);
        for (unsigned long j = 0; j < ls.period; j++)
            ls.table.push_back(local_value(ls, rep(j, ls.period)));
        bound_ = std::lcm(bound_, ls.period);
        locals_.push_back(std::move(ls));
    }
    for (auto &dp : primes_above(P, a)) {
        LocalSymbol ls;
        ls.l = dp.l;
        ls.ord = dp.ord;
        auto [Fr, ar] = residue(dp.l, dp.l.alpha);
        Int qf;
        mpz_pow_ui(qf.get_mpz_t(), dp.l.q.get_mpz_t(), Fr.deg());
        Int o = multiplicative_order(Fr, ar, qf - 1);
        if (o > budget)
            throw budget_error("period of alpha at " + dp.l.describe() + " exceeds budget");
        ls.period = o.get_ui();
        ls.small = Fr;
        ls.alpha_small = ar;
        ls.x_small = residue(dp.l, dp.l.x).second;
        ls.unit_exp = qf - 1;
        for (unsigned long j = 0; j < ls.period; j++)
            ls.table.push_back(local_value(ls, rep(j, ls.period)));
        bound_ = std::lcm(bound_, ls.period);
        if (bound_ > budget)
            throw budget_error("symbol period bound exceeds budget");
        locals_.push_back(std::move(ls));
    }
}

int SymbolEngine::s_k(unsigned long k) const
{
    int r = 1;
    for (const auto &ls : locals_) {
        int v = ls.table[k % ls.period];
        if (v == 0)
            return 0;
        r *= v;
    }
    return r;
}

int SymbolEngine::s_k_direct(unsigned long k) const
{
    int r = 1;
    for (const auto &ls : locals_) {
        int v = local_value(ls, k);
        if (v == 0)
            return 0;
        r *= v;
    }
    return r;
}

int s_k(const SeqParams &P, const HElem &a, unsigned long k) { return SymbolEngine(P, a).s_k(k); }

bool PeriodTable::contains(unsigned long k) const
{
    return std::binary_search(residues.begin(), residues.end(), k % M);
}

PeriodTable minimal_period(const std::vector<bool> &member, unsigned long N)
{
    if (member.size() != N)
        throw std::domain_error("minimal_period: size mismatch");
    std::vector<Int> divs = N > 1 ? divisors(factor(Int(N))) : std::vector<Int>{1};
    for (const Int &ti : divs) {
        unsigned long t = ti.get_ui();
        bool ok = true;
        for (unsigned long k = 1; k + t <= N && ok; k++)
            ok = member[k - 1] == member[k + t - 1];
        if (!ok)
            continue;
        PeriodTable T;
        T.M = t;
        T.N = N;
        for (unsigned long k = 1; k <= t; k++)
            if (member[k - 1])
                T.residues.push_back(k % t);
        std::sort(T.residues.begin(), T.residues.end());
        return T;
    }
    throw std::logic_error("minimal_period: N itself must be a period");
}

PeriodTable symbol_period(const SeqParams &P, const SymbolEngine &eng, const std::set<int> &S, bool sign_twist)
{
    int e1 = epsilon_k(P, 1), e2 = epsilon_k(P, 2);
    if (sign_twist && (epsilon_k(P, 3) != e1 || epsilon_k(P, 4) != e2))
        throw std::runtime_error("epsilon_k is not 2-periodic");
    auto eps = [&](unsigned long k) { return sign_twist ? (k % 2 ? e1 : e2) : 1; };
    unsigned long N = eng.period_bound();
    std::vector<bool> member(N);
    for (unsigned long k = 1; k <= N; k++)
        member[k - 1] = S.count(eng.s_k(k) * eps(k)) > 0;
    PeriodTable T = minimal_period(member, N);
    for (unsigned long k = N + 1; k <= N + 3 * T.M; k++)
        if ((S.count(eng.s_k_direct(k) * eps(k)) > 0) != T.contains(k))
            throw std::runtime_error("period table fails over-sampling at k=" + std::to_string(k));
    return T;
}

}
