#pragma once

#include "h3/conditions.hpp"
#include "h3/prover.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace h3 {

constexpr int kParamFormatVersion = 1;

struct ParamFile {
    SeqParams P;
    Derivation deriv;
    ConditionTable table;

    ProverInput prover_input() const { return ProverInput{P, deriv.curve.A, deriv.curve.B, deriv.curve.beta}; }
};

bool operator==(const ParamFile &a, const ParamFile &b);

nlohmann::ordered_json helem_json(const HElem &h);
HElem helem_from_json(const nlohmann::ordered_json &j);

std::string param_dump(const ParamFile &pf);
// parses and re-checks every invariant; throws param_error
ParamFile param_parse(const std::string &text);

void param_write(const ParamFile &pf, const std::string &path);
ParamFile param_load(const std::string &path);

}
