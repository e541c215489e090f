#include "bdbgeo/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bdbgeo/errors.hpp"

namespace bdbgeo {

ModelParams natural_units() {
    return ModelParams{};
}

ValidationResult validate(const ModelParams& p) {
    ValidationResult r;
    auto require_positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            r.violations.push_back(std::string(name) + " must be > 0");
    };
    require_positive(p.hbar, "hbar");
    require_positive(p.c, "c");
    require_positive(p.m, "m");
    require_positive(p.a_norm, "A");
    for (double v : {p.big_m, p.k_const, p.c_const, p.c1, p.c2}) {
        if (!std::isfinite(v)) {
            r.violations.push_back("all parameters must be finite");
            break;
        }
    }
    if (r.ok()) {
        if (!std::isfinite(p.k()) || !(p.k() > 0.0))
            r.violations.push_back("derived wavenumber k = m*c/hbar must be finite and > 0");
        if (!(p.q0() > 0.0))
            r.violations.push_back("derived scale q0 = 2*m^2*c^2 must be > 0");
    }
    if (p.big_m < 0.0)
        r.warnings.push_back("M is negative: horizons exist only where C and M agree in sign");
    if (p.k_const < 0.0)
        r.warnings.push_back("K is negative");
    return r;
}

namespace {

std::string normalize_key(std::string key) {
    for (char& ch : key) {
        if (ch == '_') ch = '-';
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    }
    return key;
}

} // namespace

bool apply_param_key(ModelParams& p, const std::string& key, double value) {
    const std::string k = normalize_key(key);
    if (k == "m") p.m = value;
    else if (k == "c") p.c = value;
    else if (k == "hbar") p.hbar = value;
    else if (k == "big-m") p.big_m = value;
    else if (k == "k-const") p.k_const = value;
    else if (k == "c-const") p.c_const = value;
    else if (k == "a" || k == "a-norm") p.a_norm = value;
    else if (k == "c1") p.c1 = value;
    else if (k == "c2") p.c2 = value;
    else return false;
    return true;
}

std::vector<std::string> load_config_file(const std::string& path, ModelParams& p) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open config file: " + path);
    std::vector<std::string> problems;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; };
        std::string stripped;
        for (char ch : line)
            if (!is_space(ch)) stripped.push_back(ch);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= stripped.size()) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = stripped.substr(0, eq);
        const std::string val = stripped.substr(eq + 1);
        double parsed = 0.0;
        try {
            std::size_t used = 0;
            parsed = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            problems.push_back("line " + std::to_string(lineno) + ": bad number '" + val + "'");
            continue;
        }
        if (!apply_param_key(p, key, parsed))
            problems.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return problems;
}

} // namespace bdbgeo
