#include "h3/commands.hpp"

#include "h3/paramfile.hpp"
#include "h3/resultlog.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace h3 {

int cmd_derive(int case_id, const std::string &out_path, std::ostream &out, std::ostream &err)
{
    try {
        ParamFile pf;
        pf.P = shipped_case(case_id);
        pf.deriv = derive_curve(pf.P);
        pf.table = compute_conditions(pf.P, pf.deriv.curve);
        param_write(pf, out_path);
        ParamFile back = param_load(out_path);
        if (!(back == pf))
            throw std::runtime_error("parameter file does not round-trip");
        out << "case " << case_id << ": modulus " << pf.table.M << ", " << pf.table.residues.size()
            << " residues, " << pf.table.exceptions.size() << " exceptions -> " << out_path << "\n";
        return 0;
    } catch (const std::exception &e) {
        err << "derive: " << e.what() << "\n";
        return kError;
    }
}

int cmd_conditions(const std::string &params_path, std::ostream &out, std::ostream &err)
{
    try {
        ParamFile pf = param_load(params_path);
        const ConditionTable &T = pf.table;
        out << "modulus " << T.M << "\n";
        out << "residues " << T.residues.size() << ":";
        for (auto r : T.residues)
            out << " " << r;
        out << "\nexceptions " << T.exceptions.size() << ":";
        for (auto k : T.exceptions)
            out << " " << k;
        out << "\n";
        for (auto &p : T.provenance)
            out << p.name << ": modulus " << p.M << ", " << p.residues.size() << " residues, |N| = " << p.norm << "\n";
        return 0;
    } catch (const std::exception &e) {
        err << "conditions: " << e.what() << "\n";
        return kError;
    }
}

int cmd_prove(const std::string &params_path, unsigned long k, const std::string &cert_path, std::ostream &out,
              std::ostream &err)
{
    ParamFile pf;
    try {
        pf = param_load(params_path);
    } catch (const std::exception &e) {
        err << "prove: " << e.what() << "\n";
        return kError;
    }
    try {
        ProveResult r = prove(pf.prover_input(), k, [&](unsigned long n) { return pf.table.admissible(n); });
        std::string text = cert_json(r.cert).dump() + "\n";
        out << text;
        if (!cert_path.empty()) {
            std::ofstream o(cert_path, std::ios::trunc);
            o << text;
            if (!o.flush()) {
                err << "prove: cannot write " << cert_path << "\n";
                return kError;
            }
        }
        err << "k=" << k << " " << (r.verdict ? "prime" : "composite") << " (" << r.cert.reason << ", "
            << static_cast<long>(r.cert.wall_ms) << " ms)\n";
        return r.verdict ? kPrime : kComposite;
    } catch (const unsupported_k &e) {
        err << "prove: unsupported k: " << e.what() << "\n";
        return kUnsupported;
    } catch (const std::exception &e) {
        err << "prove: " << e.what() << "\n";
        return kError;
    }
}

int cmd_verify(const std::string &params_path, const std::string &cert_path, std::ostream &out, std::ostream &err)
{
    try {
        ParamFile pf = param_load(params_path);
        std::ifstream in(cert_path);
        if (!in)
            throw std::runtime_error("cannot open " + cert_path);
        Certificate c = cert_from_json(nlohmann::json::parse(in));
        if (c.case_id != pf.P.case_id)
            throw std::runtime_error("certificate is for another case");
        std::string why;
        if (!replay(pf.prover_input(), c, &why)) {
            out << "REJECTED k=" << c.k << ": " << why << "\n";
            return kComposite;
        }
        out << "OK k=" << c.k << " " << (c.verdict ? "prime" : "composite") << "\n";
        return 0;
    } catch (const std::exception &e) {
        err << "verify: " << e.what() << "\n";
        return kError;
    }
}

namespace {

LogRecord run_one(const ParamFile &pf, unsigned long k)
{
    LogRecord rec;
    rec.k = k;
    if (!pf.table.admissible(k)) {
        rec.status = "skipped";
        rec.body = {{"reason", "not admissible"}};
        return rec;
    }
    try {
        ProveResult r = prove(pf.prover_input(), k, [&](unsigned long n) { return pf.table.admissible(n); });
        rec.status = r.verdict ? "prime" : "composite";
        rec.body = cert_json(r.cert);
    } catch (const unsupported_k &e) {
        rec.status = "skipped";
        rec.body = {{"reason", e.what()}};
    } catch (const std::exception &e) {
        rec.status = "error";
        rec.body = {{"reason", e.what()}};
    }
    return rec;
}

template <class Fn> void parallel_for(const std::vector<unsigned long> &ks, unsigned jobs, Fn fn)
{
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < ks.size();)
            fn(ks[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, jobs); j++)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
}

}

int cmd_scan(const std::string &params_path, unsigned long kmin, unsigned long kmax, unsigned jobs,
             const std::string &log_path, bool resume, std::ostream &out, std::ostream &err, ScanSummary *summary)
{
    try {
        if (kmin < 2)
            throw std::runtime_error("--min must be at least 2");
        if (kmax < kmin)
            throw std::runtime_error("empty range");
        ParamFile pf = param_load(params_path);
        if (!resume && std::filesystem::exists(log_path) && std::filesystem::file_size(log_path) > 0)
            throw std::runtime_error(log_path + " already has records; pass it with --resume");
        ResultLog log(log_path);
        ScanSummary s;
        std::vector<unsigned long> todo;
        for (unsigned long k = kmin; k <= kmax; k++) {
            if (log.has(k))
                s.resumed++;
            else
                todo.push_back(k);
        }
        std::mutex mu;
        parallel_for(todo, jobs, [&](unsigned long k) {
            LogRecord rec = run_one(pf, k);
            log.append(rec);
            if (rec.status == "error") {
                std::lock_guard<std::mutex> g(mu);
                err << "k=" << k << ": " << rec.body.value("reason", "") << "\n";
            }
        });
        for (auto &r : log.records()) {
            if (r.k < kmin || r.k > kmax)
                continue;
            if (r.status == "prime") {
                s.proved++;
                s.primes.push_back(r.k);
            } else if (r.status == "composite") {
                s.composite++;
            } else if (r.status == "skipped") {
                s.skipped++;
            } else {
                s.errors++;
            }
        }
        std::sort(s.primes.begin(), s.primes.end());
        s.primes.erase(std::unique(s.primes.begin(), s.primes.end()), s.primes.end());
        s.head = log.head();
        out << "range [" << kmin << ", " << kmax << "]: " << s.proved << " prime, " << s.composite << " composite, "
            << s.skipped << " skipped, " << s.errors << " errors (" << s.resumed << " from log)\n";
        out << "primes:";
        for (auto k : s.primes)
            out << " " << k;
        out << "\nlog head " << s.head << "\n";
        if (summary)
            *summary = s;
        return s.errors ? kError : 0;
    } catch (const std::exception &e) {
        err << "scan: " << e.what() << "\n";
        return kError;
    }
}

int cmd_crosscheck(const std::string &params_path, unsigned long kmax, unsigned rounds, unsigned jobs,
                   std::ostream &out, std::ostream &err, CrossSummary *summary)
{
    try {
        ParamFile pf = param_load(params_path);
        std::vector<unsigned long> ks;
        for (unsigned long k = 2; k <= kmax; k++)
            if (pf.table.admissible(k))
                ks.push_back(k);
        CrossSummary s;
        std::mutex mu;
        parallel_for(ks, jobs, [&](unsigned long k) {
            ProveResult r;
            try {
                r = prove(pf.prover_input(), k, [&](unsigned long n) { return pf.table.admissible(n); });
            } catch (const unsupported_k &) {
                return;
            }
            bool mr = miller_rabin(r.cert.F, rounds, 0x5eed + k);
            std::lock_guard<std::mutex> g(mu);
            s.checked++;
            if (r.verdict)
                s.primes.push_back(k);
            if (mr != r.verdict)
                s.mismatches.push_back(k);
        });
        std::sort(s.mismatches.begin(), s.mismatches.end());
        std::sort(s.primes.begin(), s.primes.end());
        for (auto k : s.mismatches)
            out << "MISMATCH k=" << k << "\n";
        out << s.checked << " admissible k checked, " << s.mismatches.size() << " mismatches, primes:";
        for (auto k : s.primes)
            out << " " << k;
        out << "\n";
        if (summary)
            *summary = s;
        return s.mismatches.empty() ? 0 : 1;
    } catch (const std::exception &e) {
        err << "crosscheck: " << e.what() << "\n";
        return kError;
    }
}

}
