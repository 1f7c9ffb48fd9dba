#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace h3 {

enum ExitCode { kPrime = 0, kComposite = 1, kUnsupported = 2, kError = 3 };

int cmd_derive(int case_id, const std::string &out_path, std::ostream &out, std::ostream &err);
int cmd_conditions(const std::string &params_path, std::ostream &out, std::ostream &err);
int cmd_prove(const std::string &params_path, unsigned long k, const std::string &cert_path, std::ostream &out,
              std::ostream &err);
// re-checks a certificate written by prove
int cmd_verify(const std::string &params_path, const std::string &cert_path, std::ostream &out, std::ostream &err);

struct ScanSummary {
    std::vector<unsigned long> primes;
    size_t proved = 0, composite = 0, skipped = 0, errors = 0, resumed = 0;
    std::string head;
};
int cmd_scan(const std::string &params_path, unsigned long kmin, unsigned long kmax, unsigned jobs,
             const std::string &log_path, bool resume, std::ostream &out, std::ostream &err,
             ScanSummary *summary = nullptr);

struct CrossSummary {
    size_t checked = 0;
    std::vector<unsigned long> mismatches, primes;
};
int cmd_crosscheck(const std::string &params_path, unsigned long kmax, unsigned rounds, unsigned jobs,
                   std::ostream &out, std::ostream &err, CrossSummary *summary = nullptr);

}
