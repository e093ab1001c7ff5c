#pragma once

#include "brstlab/checks.hpp"
#include "brstlab/cohomology.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace brstlab {

enum class ReportFormat { json, csv, text };

struct Report {
    std::string model;
    int ghost_lo = 0;
    int ghost_hi = 0;
    int weight = 0;
    std::vector<CohomologyEntry> cohomology;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const { return all_pass(checks); }
};

inline std::string emit_report(const Report& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            nlohmann::ordered_json j;
            j["model"] = r.model;
            j["bounds"] = {{"ghost", {r.ghost_lo, r.ghost_hi}}, {"weight", r.weight}};
            j["cohomology"] = nlohmann::ordered_json::array();
            for (const auto& e : r.cohomology)
                j["cohomology"].push_back(
                    {{"ghost", e.ghost}, {"weight", e.weight}, {"dim", e.dim}, {"ker", e.ker}, {"im", e.im}, {"H", e.h}});
            j["checks"] = nlohmann::ordered_json::array();
            for (const auto& c : r.checks)
                j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
            return j.dump() + "\n";
        }
        case ReportFormat::csv: {
            std::ostringstream os;
            os << "ghost,weight,dim,ker,im,H\n";
            for (const auto& e : r.cohomology)
                os << e.ghost << ',' << e.weight << ',' << e.dim << ',' << e.ker << ',' << e.im << ',' << e.h << '\n';
            return os.str();
        }
        case ReportFormat::text: {
            std::ostringstream os;
            os << "model " << r.model << ", ghost " << r.ghost_lo << ".." << r.ghost_hi << ", weight <= " << r.weight
               << '\n';
            if (!r.cohomology.empty()) {
                os << "ghost weight    dim    ker     im      H\n";
                for (const auto& e : r.cohomology) {
                    char line[96];
                    std::snprintf(line, sizeof line, "%5d %6d %6zu %6zu %6zu %6zu\n", e.ghost, e.weight, e.dim, e.ker,
                                  e.im, e.h);
                    os << line;
                }
            }
            for (const auto& c : r.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
            return os.str();
        }
    }
    return {};
}

}  // namespace brstlab
