#include "h3/resultlog.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <stdexcept>

namespace h3 {

using json = nlohmann::json;

json cert_json(const Certificate &c)
{
    json j;
    j["case"] = c.case_id;
    j["k"] = c.k;
    j["F"] = c.F.get_str();
    j["r"] = c.r.get_str();
    j["xi_res"] = c.xi_res.get_str();
    j["A"] = c.A.get_str();
    j["B"] = c.B.get_str();
    j["beta"] = c.beta.get_str();
    j["C"] = c.C.get_str();
    j["e2"] = c.e2;
    j["QX"] = c.QX.get_str();
    j["QY"] = c.QY.get_str();
    j["QZ"] = c.QZ.get_str();
    j["Z2"] = c.Z2.get_str();
    j["scalar_bits"] = c.scalar_bits;
    j["sign_flips"] = c.sign_flips;
    j["verdict"] = c.verdict;
    j["reason"] = c.reason;
    return j;
}

static Int dec(const json &j, const char *key)
{
    Int v;
    if (v.set_str(j.at(key).get<std::string>(), 10) != 0)
        throw std::runtime_error(std::string("certificate field is not decimal: ") + key);
    return v;
}

Certificate cert_from_json(const json &j)
{
    Certificate c;
    c.case_id = j.at("case").get<int>();
    c.k = j.at("k").get<unsigned long>();
    c.F = dec(j, "F");
    c.r = dec(j, "r");
    c.xi_res = dec(j, "xi_res");
    c.A = dec(j, "A");
    c.B = dec(j, "B");
    c.beta = dec(j, "beta");
    c.C = dec(j, "C");
    c.e2 = j.at("e2").get<unsigned long>();
    c.QX = dec(j, "QX");
    c.QY = dec(j, "QY");
    c.QZ = dec(j, "QZ");
    c.Z2 = dec(j, "Z2");
    c.scalar_bits = j.at("scalar_bits").get<unsigned long>();
    c.sign_flips = j.at("sign_flips").get<int>();
    c.verdict = j.at("verdict").get<bool>();
    c.reason = j.at("reason").get<std::string>();
    return c;
}

std::string sha256_hex(const std::string &data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char *hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; i++) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

static std::string line_digest(const json &rec)
{
    json body = rec;
    body.erase("digest");
    return sha256_hex(body.dump());
}

std::vector<LogRecord> ResultLog::read(const std::string &path)
{
    std::vector<LogRecord> out;
    std::ifstream in(path);
    if (!in)
        return out;
    std::string line, prev = kGenesis;
    size_t n = 0;
    while (std::getline(in, line)) {
        n++;
        if (line.empty())
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception &e) {
            throw std::runtime_error(path + ":" + std::to_string(n) + ": not JSON");
        }
        if (j.value("prev", "") != prev)
            throw std::runtime_error(path + ":" + std::to_string(n) + ": broken digest chain");
        std::string d = line_digest(j);
        if (j.value("digest", "") != d)
            throw std::runtime_error(path + ":" + std::to_string(n) + ": digest mismatch");
        prev = d;
        LogRecord r;
        r.k = j.at("k").get<unsigned long>();
        r.status = j.at("status").get<std::string>();
        r.body = j;
        out.push_back(std::move(r));
    }
    return out;
}

ResultLog::ResultLog(const std::string &path) : path_(path), head_(kGenesis)
{
    records_ = read(path);
    for (auto &r : records_) {
        auto it = status_.find(r.k);
        if (it != status_.end() && it->second != r.status)
            throw std::runtime_error(path + ": conflicting entries for k=" + std::to_string(r.k));
        status_[r.k] = r.status;
        head_ = r.body.at("digest").get<std::string>();
    }
    std::ofstream o(path, std::ios::app);
    if (!o)
        throw std::runtime_error("cannot open log " + path);
}

bool ResultLog::has(unsigned long k) const
{
    std::lock_guard<std::mutex> g(mu_);
    return status_.count(k) > 0;
}

std::string ResultLog::head() const
{
    std::lock_guard<std::mutex> g(mu_);
    return head_;
}

void ResultLog::append(const LogRecord &r)
{
    std::lock_guard<std::mutex> g(mu_);
    auto it = status_.find(r.k);
    if (it != status_.end() && it->second != r.status)
        throw std::runtime_error("conflicting result for k=" + std::to_string(r.k));
    json j = r.body;
    j["k"] = r.k;
    j["status"] = r.status;
    j["prev"] = head_;
    j.erase("digest");
    std::string d = sha256_hex(j.dump());
    j["digest"] = d;
    std::ofstream o(path_, std::ios::app);
    o << j.dump() << "\n";
    if (!o.flush())
        throw std::runtime_error("log write failed: " + path_);
    head_ = d;
    status_[r.k] = r.status;
    LogRecord stored = r;
    stored.body = j;
    records_.push_back(std::move(stored));
}

}
