#include "h3/paramfile.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace h3 {

using ojson = nlohmann::ordered_json;

static bool same(const SymbolProvenance &a, const SymbolProvenance &b)
{
    return a.name == b.name && a.norm == b.norm && a.primes == b.primes && a.M == b.M && a.residues == b.residues;
}

bool operator==(const ParamFile &a, const ParamFile &b)
{
    const CurveData &x = a.deriv.curve, &y = b.deriv.curve;
    bool curve = x.j == y.j && x.A == y.A && x.B == y.B && x.beta == y.beta && x.gamma3 == y.gamma3 &&
                 x.Aprime == y.Aprime && x.Bprime == y.Bprime && x.x_lambda == y.x_lambda &&
                 x.x_lambda_bar == y.x_lambda_bar && x.x0 == y.x0 && x.f_coeffs == y.f_coeffs && x.disc_f == y.disc_f &&
                 x.disc_E == y.disc_E;
    const Derivation &d = a.deriv, &e = b.deriv;
    bool deriv = d.class_poly == e.class_poly && d.sign.p == e.sign.p && d.sign.pi == e.sign.pi &&
                 d.sign.eps == e.sign.eps && d.sign.sigma == e.sign.sigma && d.sign.negated == e.sign.negated &&
                 d.analytic_labels_agree == e.analytic_labels_agree && d.aux_prime == e.aux_prime &&
                 d.cm_primes == e.cm_primes && d.precision_bits == e.precision_bits;
    bool prov = a.table.provenance.size() == b.table.provenance.size();
    for (size_t i = 0; prov && i < a.table.provenance.size(); i++)
        prov = same(a.table.provenance[i], b.table.provenance[i]);
    bool table = a.table.M == b.table.M && a.table.residues == b.table.residues &&
                 a.table.exceptions == b.table.exceptions && a.table.t0_bound == b.table.t0_bound && prov;
    const SeqParams &p = a.P, &q = b.P;
    bool params = p.case_id == q.case_id && p.D == q.D && p.c0 == q.c0 && p.c1 == q.c1 && p.alpha == q.alpha &&
                  p.p_sign == q.p_sign;
    return params && curve && deriv && table;
}

ojson helem_json(const HElem &h)
{
    ojson a = ojson::array();
    for (const KElem &k : h.e) {
        a.push_back(rat_str(k.x));
        a.push_back(rat_str(k.y));
    }
    return a;
}

HElem helem_from_json(const ojson &j)
{
    if (!j.is_array() || j.size() != 6)
        throw param_error("HElem must be six decimal rationals");
    auto rat = [&](int i) {
        std::string s = j.at(i).get<std::string>();
        Rat r = rat_parse(s);
        if (rat_str(r) != s)
            throw param_error("not a canonical decimal rational: " + s);
        return r;
    };
    HElem h;
    for (int i = 0; i < 3; i++)
        h.e[i] = KElem(rat(2 * i), rat(2 * i + 1));
    return h;
}

static ojson quad_json(const QuadInt &q) { return ojson::array({q.a.get_str(), q.b.get_str()}); }

static Int int_parse(const ojson &j)
{
    std::string s = j.get<std::string>();
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0 || v.get_str() != s)
        throw param_error("not a canonical decimal integer: " + s);
    return v;
}

static QuadInt quad_parse(const ojson &j, long D)
{
    if (!j.is_array() || j.size() != 2)
        throw param_error("QuadInt must be [a, b]");
    return QuadInt(int_parse(j[0]), int_parse(j[1]), D);
}

std::string param_dump(const ParamFile &pf)
{
    const SeqParams &P = pf.P;
    const CurveData &c = pf.deriv.curve;
    const Derivation &d = pf.deriv;
    ojson j;
    j["format"] = "h3prove-params";
    j["version"] = kParamFormatVersion;
    j["case"] = P.case_id;
    j["D"] = std::to_string(P.D);
    j["c0"] = quad_json(P.c0);
    j["c1"] = quad_json(P.c1);
    j["alpha"] = quad_json(P.alpha);
    j["p_sign"] = P.p_sign;
    j["conventions"] = {
        {"quadint", "[a, b] means (a + b*sqrt(D))/2"},
        {"helem", "[x0, y0, x1, y1, x2, y2] means sum (xi + yi*sqrt(D)) * xi^i, xi^3 + c1*xi + c0 = 0"},
        {"tau", "(1 + sqrt(D))/2"},
        {"lambda", "the prime above 2 containing alpha"},
        {"embedding", "sqrt(D) -> i*sqrt(|D|)"},
    };
    ojson cj;
    cj["j"] = helem_json(c.j);
    cj["A"] = helem_json(c.A);
    cj["B"] = helem_json(c.B);
    cj["beta"] = helem_json(c.beta);
    cj["gamma3"] = helem_json(c.gamma3);
    cj["Aprime"] = helem_json(c.Aprime);
    cj["Bprime"] = helem_json(c.Bprime);
    cj["x_lambda"] = helem_json(c.x_lambda);
    cj["x_lambda_bar"] = helem_json(c.x_lambda_bar);
    cj["x0"] = helem_json(c.x0);
    cj["f"] = ojson::array({helem_json(c.f_coeffs[0]), helem_json(c.f_coeffs[1]), helem_json(c.f_coeffs[2])});
    cj["disc_f"] = helem_json(c.disc_f);
    cj["disc_E"] = helem_json(c.disc_E);
    j["curve"] = cj;
    ojson t;
    t["M"] = pf.table.M;
    t["residues"] = pf.table.residues;
    t["exceptions"] = pf.table.exceptions;
    t["t0_bound"] = pf.table.t0_bound;
    ojson prov = ojson::array();
    for (auto &p : pf.table.provenance)
        prov.push_back({{"symbol", p.name}, {"norm", p.norm}, {"primes", p.primes}, {"M", p.M}, {"residues", p.residues}});
    t["provenance"] = prov;
    j["conditions"] = t;
    ojson dj;
    ojson hd = ojson::array();
    for (auto &x : d.class_poly)
        hd.push_back(x.get_str());
    dj["class_poly"] = hd;
    dj["gamma3_sign"] = {{"p", d.sign.p},          {"pi", quad_json(d.sign.pi)}, {"eps", d.sign.eps},
                         {"sigma", d.sign.sigma}, {"negated", d.sign.negated}};
    dj["analytic_labels_agree"] = d.analytic_labels_agree;
    dj["aux_prime"] = d.aux_prime;
    dj["cm_primes"] = d.cm_primes;
    dj["precision_bits"] = d.precision_bits;
    j["derivation"] = dj;
    return j.dump(1) + "\n";
}

ParamFile param_parse(const std::string &text)
{
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception &e) {
        throw param_error(std::string("parameter file is not JSON: ") + e.what());
    }
    ParamFile pf;
    try {
        if (j.at("format") != "h3prove-params")
            throw param_error("not a parameter file");
        if (j.at("version") != kParamFormatVersion)
            throw param_error("unsupported parameter file version");
        SeqParams &P = pf.P;
        P.case_id = j.at("case").get<int>();
        P.D = int_parse(j.at("D")).get_si();
        P.c0 = quad_parse(j.at("c0"), P.D);
        P.c1 = quad_parse(j.at("c1"), P.D);
        P.alpha = quad_parse(j.at("alpha"), P.D);
        P.p_sign = j.at("p_sign").get<long>();
        validate(P);
        const ojson &cj = j.at("curve");
        CurveData &c = pf.deriv.curve;
        c.j = helem_from_json(cj.at("j"));
        c.A = helem_from_json(cj.at("A"));
        c.B = helem_from_json(cj.at("B"));
        c.beta = helem_from_json(cj.at("beta"));
        c.gamma3 = helem_from_json(cj.at("gamma3"));
        c.Aprime = helem_from_json(cj.at("Aprime"));
        c.Bprime = helem_from_json(cj.at("Bprime"));
        c.x_lambda = helem_from_json(cj.at("x_lambda"));
        c.x_lambda_bar = helem_from_json(cj.at("x_lambda_bar"));
        c.x0 = helem_from_json(cj.at("x0"));
        const ojson &f = cj.at("f");
        if (!f.is_array() || f.size() != 3)
            throw param_error("f must have three coefficients");
        for (int i = 0; i < 3; i++)
            c.f_coeffs[i] = helem_from_json(f[i]);
        c.disc_f = helem_from_json(cj.at("disc_f"));
        c.disc_E = helem_from_json(cj.at("disc_E"));
        const ojson &dj = j.at("derivation");
        Derivation &d = pf.deriv;
        for (auto &x : dj.at("class_poly"))
            d.class_poly.push_back(int_parse(x));
        if (d.class_poly.size() != 4 || d.class_poly[3] != 1)
            throw param_error("class polynomial must be a monic cubic");
        const ojson &s = dj.at("gamma3_sign");
        d.sign.p = s.at("p").get<long>();
        d.sign.pi = quad_parse(s.at("pi"), P.D);
        d.sign.eps = s.at("eps").get<int>();
        d.sign.sigma = s.at("sigma").get<int>();
        d.sign.negated = s.at("negated").get<bool>();
        d.analytic_labels_agree = dj.at("analytic_labels_agree").get<bool>();
        d.aux_prime = dj.at("aux_prime").get<long>();
        d.cm_primes = dj.at("cm_primes").get<std::vector<long>>();
        d.precision_bits = dj.at("precision_bits").get<unsigned>();
        const ojson &t = j.at("conditions");
        ConditionTable &T = pf.table;
        T.M = t.at("M").get<unsigned long>();
        T.residues = t.at("residues").get<std::vector<unsigned long>>();
        T.exceptions = t.at("exceptions").get<std::vector<unsigned long>>();
        T.t0_bound = t.at("t0_bound").get<unsigned long>();
        for (auto &p : t.at("provenance")) {
            SymbolProvenance sp;
            sp.name = p.at("symbol").get<std::string>();
            sp.norm = p.at("norm").get<std::string>();
            sp.primes = p.at("primes").get<std::vector<std::string>>();
            sp.M = p.at("M").get<unsigned long>();
            sp.residues = p.at("residues").get<std::vector<unsigned long>>();
            T.provenance.push_back(sp);
        }
    } catch (const param_error &) {
        throw;
    } catch (const std::exception &e) {
        throw param_error(std::string("malformed parameter file: ") + e.what());
    }
    // self-validation
    auto bad = curve_invariant_failures(pf.P, pf.deriv.curve, pf.deriv.class_poly);
    if (!bad.empty())
        throw param_error("curve invariant fails on load: " + bad.front());
    const ConditionTable &T = pf.table;
    if (T.M == 0 || T.residues.empty() || !std::is_sorted(T.residues.begin(), T.residues.end()) ||
        T.residues.back() >= T.M || !std::is_sorted(T.exceptions.begin(), T.exceptions.end()))
        throw param_error("condition table is malformed");
    if (std::adjacent_find(T.residues.begin(), T.residues.end()) != T.residues.end())
        throw param_error("condition table has duplicate residues");
    return pf;
}

void param_write(const ParamFile &pf, const std::string &path)
{
    std::string text = param_dump(pf);
    std::string tmp = path + ".tmp";
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o)
            throw std::runtime_error("cannot write " + tmp);
        o << text;
        if (!o.flush())
            throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

ParamFile param_load(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw param_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return param_parse(ss.str());
}

}
