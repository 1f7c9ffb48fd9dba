#include "h3/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"Primality prover for the class-number-three sequences F_k"};
    app.require_subcommand(1);

    int case_id = 0;
    std::string out_path, params, cert, log_path = "scan.jsonl", resume_path;
    unsigned long k = 0, kmin = 2, kmax = 0;
    unsigned jobs = 1, rounds = 64;

    auto *derive = app.add_subcommand("derive", "derive curve data and the condition table");
    derive->add_option("--case", case_id, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    derive->add_option("--out", out_path, "parameter file to write")->required();

    auto *cond = app.add_subcommand("conditions", "print the admissible residues");
    cond->add_option("--params", params)->required();

    auto *prv = app.add_subcommand("prove", "decide F_k; exit 0 prime, 1 composite, 2 unsupported k");
    prv->add_option("--params", params)->required();
    prv->add_option("--k", k)->required();
    prv->add_option("--cert", cert, "also write the certificate here");

    auto *ver = app.add_subcommand("verify", "replay a certificate");
    ver->add_option("--params", params)->required();
    ver->add_option("--cert", cert)->required();

    auto *scan = app.add_subcommand("scan", "prove every admissible k in a range");
    scan->add_option("--params", params)->required();
    scan->add_option("--min", kmin)->required();
    scan->add_option("--max", kmax)->required();
    scan->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    scan->add_option("--log", log_path, "new result log");
    scan->add_option("--resume", resume_path, "existing result log to continue");

    auto *cross = app.add_subcommand("crosscheck", "compare prove with Miller-Rabin");
    cross->add_option("--params", params)->required();
    cross->add_option("--max-k", kmax)->required();
    cross->add_option("--rounds", rounds);
    cross->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : h3::kError;
    }

    if (*derive)
        return h3::cmd_derive(case_id, out_path, std::cout, std::cerr);
    if (*cond)
        return h3::cmd_conditions(params, std::cout, std::cerr);
    if (*prv)
        return h3::cmd_prove(params, k, cert, std::cout, std::cerr);
    if (*ver)
        return h3::cmd_verify(params, cert, std::cout, std::cerr);
    if (*scan) {
        bool resume = !resume_path.empty();
        return h3::cmd_scan(params, kmin, kmax, jobs, resume ? resume_path : log_path, resume, std::cout, std::cerr);
    }
    if (*cross)
        return h3::cmd_crosscheck(params, kmax, rounds, jobs, std::cout, std::cerr);
    return h3::kError;
}
