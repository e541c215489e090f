#include "bdbgeo/report_io.hpp"

#include <cmath>
#include <sstream>

namespace bdbgeo {

nlohmann::json params_json(const ModelParams& p) {
    return nlohmann::json{
        {"hbar", p.hbar}, {"c", p.c},       {"m", p.m},
        {"M", p.big_m},   {"K", p.k_const}, {"C", p.c_const},
        {"A", p.a_norm},  {"C1", p.c1},     {"C2", p.c2},
    };
}

nlohmann::json report_json(const ResidualReport& r) {
    return nlohmann::json{
        {"equation", equation_name(r.equation)},
        {"grid", {{"lo", r.grid.lo}, {"hi", r.grid.hi}, {"n", r.grid.n}, {"spacing", r.grid.spacing()}}},
        {"max_residual", r.max_residual},
        {"rms_residual", r.rms_residual},
        {"normalization", r.normalization},
        {"normalized_max", r.normalized_max()},
        {"max_location", r.max_location},
        {"tolerance", r.tolerance},
        {"evaluated", r.evaluated},
        {"skipped", r.skipped},
        {"passed", r.passed},
    };
}

nlohmann::json reports_json(const std::vector<ResidualReport>& rs) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(report_json(r));
    return arr;
}

nlohmann::json horizons_json(const HorizonSet& hs) {
    auto regions = nlohmann::json::array();
    for (const auto& [iv, type] : hs.regions) {
        regions.push_back({
            {"lo", std::isfinite(iv.lo) ? nlohmann::json(iv.lo) : nlohmann::json()},
            {"hi", std::isfinite(iv.hi) ? nlohmann::json(iv.hi) : nlohmann::json()},
            {"type", type == RegionType::timelike ? "timelike" : "spacelike"},
        });
    }
    return nlohmann::json{{"locations", hs.locations}, {"regions", regions}};
}

std::string params_comment(const ModelParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "# m = " << p.m << ", c = " << p.c << ", hbar = " << p.hbar
       << ", M = " << p.big_m << ", K = " << p.k_const << ", C = " << p.c_const
       << ", A = " << p.a_norm << ", C1 = " << p.c1 << ", C2 = " << p.c2;
    return os.str();
}

} // namespace bdbgeo
