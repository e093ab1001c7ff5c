#pragma once

#include "brstlab/cohomology.hpp"
#include "brstlab/errors.hpp"
#include "brstlab/model.hpp"
#include "brstlab/report.hpp"
#include "brstlab/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace brstlab {

namespace detail {

struct CliOptions {
    std::string model_path;
    std::string out_path;
    std::string format = "json";
    std::string ghost = "0..6";
    int weight_max = -1;
};

inline std::pair<int, int> parse_ghost_range(const std::string& text) {
    static const std::regex re(R"((-?\d+)\.\.(-?\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw UsageError("--ghost expects LO..HI, got '" + text + "'");
    int lo = std::stoi(m[1].str());
    int hi = std::stoi(m[2].str());
    if (lo > hi) throw UsageError("--ghost range is empty");
    return {lo, hi};
}

inline ReportFormat parse_format(const std::string& f) {
    if (f == "json") return ReportFormat::json;
    if (f == "csv") return ReportFormat::csv;
    if (f == "text") return ReportFormat::text;
    throw UsageError("--format expects json, csv or text");
}

inline ModelFile load_model(const std::string& path) {
    if (path.empty()) return parse_model(default_model_text());
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read model file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

inline void require_gla_model(const ModelSpec& spec) {
    if (!spec.is_standard() || !spec.t_poly.is_zero())
        throw InvalidSpec("gla commands need alpha = (1,1,1) and T = 0");
}

inline std::vector<char*> argv_of(std::vector<std::string>& args) {
    std::vector<char*> out;
    for (auto& a : args) out.push_back(a.data());
    return out;
}

}  // namespace detail

// Entry point of the brstlab tool. args[0] is the program name. The report goes to `out` (or
// --out); diagnostics go to `err`. Exit 0: all checks pass; 1: a check or computation failed;
// 2: usage, syntax or model error.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact BRST and double-complex cohomology for the U(2) matrix model", "brstlab"};
    app.require_subcommand(1);
    detail::CliOptions opt;
    auto common = [&](CLI::App* sub, int default_weight, bool ghost) {
        sub->add_option("--model", opt.model_path, "model file (default: built-in u2)");
        sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
        sub->add_option("--format", opt.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--weight-max", opt.weight_max, "highest weight")
            ->default_str(std::to_string(default_weight))
            ->check(CLI::NonNegativeNumber);
        if (ghost) sub->add_option("--ghost", opt.ghost, "ghost range LO..HI; use --ghost=-2..6 for negatives");
    };

    enum class Cmd { none, verify_brst, verify_cme, cohomology, aux_compare, gla_verify, gla_compare, report };
    Cmd cmd = Cmd::none;
    int default_weight = 8;
    auto leaf = [&](CLI::App* parent, const char* name, const char* help, Cmd c, int weight, bool ghost) {
        CLI::App* sub = parent->add_subcommand(name, help);
        common(sub, weight, ghost);
        sub->callback([&cmd, &default_weight, c, weight] {
            cmd = c;
            default_weight = weight;
        });
    };
    CLI::App* verify = app.add_subcommand("verify", "BRST-level checks")->require_subcommand(1);
    leaf(verify, "brst", "cme, d-squared, s0-closed, obstruction", Cmd::verify_brst, 8, true);
    leaf(verify, "cme", "classical master equation", Cmd::verify_cme, 8, false);
    leaf(&app, "cohomology", "cohomology table of the gauge-fixed theory", Cmd::cohomology, 8, true);
    CLI::App* aux = app.add_subcommand("aux", "auxiliary-pair extension")->require_subcommand(1);
    leaf(aux, "compare", "total theory against the extended theory", Cmd::aux_compare, 6, true);
    CLI::App* gla = app.add_subcommand("gla", "double-complex checks")->require_subcommand(1);
    leaf(gla, "verify", "full double-complex suite", Cmd::gla_verify, 6, false);
    leaf(gla, "compare", "total complex against the BRST complex", Cmd::gla_compare, 6, false);
    leaf(&app, "report", "cohomology table and BRST checks", Cmd::report, 8, true);

    try {
        auto argv = detail::argv_of(args);
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            return 2;
        }
        ReportFormat format = detail::parse_format(opt.format);
        int weight = opt.weight_max >= 0 ? opt.weight_max : default_weight;
        auto [glo, ghi] = detail::parse_ghost_range(opt.ghost);
        ModelFile file = detail::load_model(opt.model_path);
        ModelSpec spec = to_model_spec(file);

        Report r;
        r.model = file.name;
        r.weight = weight;
        r.ghost_lo = glo;
        r.ghost_hi = ghi;
        switch (cmd) {
            case Cmd::verify_brst: r.checks = brst_checks(spec, std::max(ghi, 8), weight); break;
            case Cmd::verify_cme: r.checks = {cme_check(spec)}; break;
            case Cmd::cohomology: {
                ComplexSlice s = extended_slice(spec, glo, ghi, weight);
                r.cohomology = cohomology_report(s, glo, ghi, weight).entries;
                break;
            }
            case Cmd::aux_compare: {
                ComplexSlice ext = extended_slice(spec, glo, ghi, weight);
                ComplexSlice tot = total_slice(spec, glo, ghi, weight);
                r.cohomology = cohomology_report(tot, glo, ghi, weight).entries;
                r.checks = {summarize("quasi-isomorphism", compare_quasi_iso(tot, ext, glo, ghi, weight))};
                break;
            }
            case Cmd::gla_verify:
                detail::require_gla_model(spec);
                r.ghost_lo = 0;
                r.ghost_hi = 8;
                r.checks = gla_checks(spec, {weight, 3, 8});
                break;
            case Cmd::gla_compare:
                detail::require_gla_model(spec);
                r.ghost_lo = 0;
                r.ghost_hi = 8;
                r.checks = gla_compare_checks(spec, {weight, 3, 8});
                break;
            case Cmd::report: {
                ComplexSlice s = extended_slice(spec, glo, ghi, weight);
                r.cohomology = cohomology_report(s, glo, ghi, weight).entries;
                r.checks = brst_checks(spec, std::max(ghi, 8), weight);
                break;
            }
            case Cmd::none: throw UsageError("no command given");
        }
        std::string text = emit_report(r, format);
        if (opt.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(opt.out_path, std::ios::binary);
            if (!f) throw UsageError("cannot write " + opt.out_path);
            f << text;
        }
        for (const auto& c : r.checks)
            if (!c.pass) err << "FAIL " << c.name << ": " << c.detail << '\n';
        return r.passed() ? 0 : 1;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidSpec& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace brstlab
