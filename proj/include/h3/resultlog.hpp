#pragma once

#include "h3/prover.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace h3 {

// keys sorted, integers as decimal strings
nlohmann::json cert_json(const Certificate &c);
Certificate cert_from_json(const nlohmann::json &j);

std::string sha256_hex(const std::string &data);

struct LogRecord {
    unsigned long k = 0;
    std::string status; // prime, composite, skipped, error
    nlohmann::json body;
};

// append-only JSON lines; each line carries the digest of the previous one
class ResultLog {
  public:
    static constexpr const char *kGenesis = "0000000000000000000000000000000000000000000000000000000000000000";

    // opens (creating if needed) and verifies the existing chain; throws on a broken chain
    explicit ResultLog(const std::string &path);

    void append(const LogRecord &r);
    const std::vector<LogRecord> &records() const { return records_; }
    bool has(unsigned long k) const;
    std::string head() const;

    // reads and verifies without opening for writing
    static std::vector<LogRecord> read(const std::string &path);

  private:
    std::string path_, head_;
    std::vector<LogRecord> records_;
    std::map<unsigned long, std::string> status_;
    mutable std::mutex mu_;
};

}
