// Runs the sixteen acceptance criteria at their stated bounds and prints one line per criterion.
// Exit status is the number of failing criteria (0 when all pass).

#include "brstlab/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace brstlab;

namespace {

using detail::as_ll;

struct Context {
    ModelSpec spec = default_model_spec();
    ComplexSlice brst = extended_slice(spec, 0, 9, 9);
    DoubleComplexSlice dc{8};
};

CheckResult all_of(std::string name, std::vector<CheckResult> parts) {
    CheckResult out{std::move(name), true, ""};
    for (const auto& p : parts) {
        out.pass = out.pass && p.pass;
        out.detail += (out.detail.empty() ? "" : "; ") + p.name + " " + (p.pass ? "ok" : "FAILED") + " (" + p.detail + ")";
    }
    return out;
}

long long monomials_of_degree(int n) {
    if (n < 0) return 0;
    return static_cast<long long>(n + 3) * (n + 2) * (n + 1) / 6;
}

CheckResult nilpotence(const Context& c) {
    return all_of("nilpotence", {symbolic_nilpotence(c.spec),
                                 summarize("blockwise ghost<=8 weight<=8", blockwise_nilpotence(c.brst, 8, 8))});
}

CheckResult master_equation(const Context&) {
    std::vector<CheckResult> rs;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int g = 1; g <= 3; ++g)
                for (int beta : {1, -1}) {
                    ModelSpec s = default_model_spec();
                    s.alpha = {Rational(a), Rational(b), Rational(g)};
                    s.beta = Rational(beta);
                    CheckResult r = cme_check(s);
                    r.name = "alpha=(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(g) +
                             ") beta=" + std::to_string(beta);
                    rs.push_back(r);
                }
    return summarize("master equation", rs);
}

CheckResult h0_dimensions(const Context& c) {
    std::vector<CheckResult> rs;
    for (int w = 0; w <= 8; ++w) {
        rs.push_back(equality_check("dim w=" + std::to_string(w), as_ll(cohomology_dim(c.brst, 0, w)), w / 2 + 1));
        FamilyCheck f = family_check(c.brst, 0, w, invariant_family(c.brst.table(), w));
        rs.push_back({"family w=" + std::to_string(w), f.all_cocycles && f.independent_classes == f.dim_h,
                      std::to_string(f.independent_classes) + " classes of " + std::to_string(f.dim_h) + f.detail});
    }
    return summarize("H0 dimensions", rs);
}

CheckResult odd_vanishing(const Context& c) {
    std::vector<CheckResult> rs;
    for (int q = 1; q <= 3; ++q)
        for (int w = 0; w <= 8; ++w)
            rs.push_back(equality_check("H(" + std::to_string(2 * q + 1) + "," + std::to_string(w) + ")",
                                        as_ll(cohomology_dim(c.brst, 2 * q + 1, w)), 0));
    return summarize("odd vanishing", rs);
}

CheckResult even_tail(const Context& c) {
    std::vector<CheckResult> rs;
    for (int q = 2; q <= 3; ++q)
        for (int w = 0; w <= 8; ++w) {
            std::string at = "H(" + std::to_string(2 * q) + "," + std::to_string(w) + ")";
            rs.push_back(equality_check(at, as_ll(cohomology_dim(c.brst, 2 * q, w)), w >= q ? 1 : 0));
            if (w < q) continue;
            FamilyCheck f = family_check(c.brst, 2 * q, w, even_tail_family(c.brst.table(), q, w));
            rs.push_back({at + " representative", f.all_cocycles && f.independent_classes == 1, f.detail});
        }
    return summarize("even tail", rs);
}

CheckResult h2_structure(const Context& c) {
    std::vector<CheckResult> rs;
    for (int w = 1; w <= 8; ++w) {
        std::string at = "w=" + std::to_string(w);
        long long dim = as_ll(cohomology_dim(c.brst, 2, w));
        rs.push_back(equality_check("dim " + at, dim, monomials_of_degree(w - 3) + 1));
        FamilyCheck f = family_check(c.brst, 2, w, h2_family(c.brst.table(), w));
        rs.push_back({"family spans " + at, f.all_cocycles && as_ll(f.independent_classes) == dim,
                      std::to_string(f.independent_classes) + " classes of " + std::to_string(dim) + f.detail});
    }
    return summarize("H2 structure", rs);
}

CheckResult periodicity(const Context& c) { return summarize("2-periodicity", verify_periodicity(c.brst, 2, 8)); }

CheckResult contractible_pairs(const Context& c) {
    ComplexSlice ext = extended_slice(c.spec, -2, 6, 6);
    ComplexSlice tot = total_slice(c.spec, -2, 6, 6);
    return summarize("contractible pairs", compare_quasi_iso(tot, ext, -2, 6, 6));
}

CheckResult obstruction(const Context& c) {
    CheckResult r = obstruction_check(c.spec);
    r.name = "off-shell obstruction";
    return r;
}

CheckResult gla_validity(const Context& c) {
    return all_of("GLA validity", {summarize("module conditions", check_module_conditions(c.dc.instance())),
                                   gla_square_check(c.dc.instance(), 6), su2_ce_reduction(3)});
}

CheckResult double_complex(const Context& c) { return all_of("double complex", double_complex_checks(c.dc, 6)); }

CheckResult total_identification(const Context& c) {
    std::vector<CheckResult> rs;
    std::map<std::string, int> scalars;
    for (int k = 0; k <= 8; ++k)
        for (int w = 0; w <= 8; ++w) {
            std::string at = "k=" + std::to_string(k) + " w=" + std::to_string(w);
            rs.push_back(equality_check("dim " + at, as_ll(c.dc.total_dim(k, w)), as_ll(c.brst.block(k, w).size())));
            TotalCompare t = total_complex_compare(c.dc, c.brst, k, w);
            rs.push_back(t.result);
            for (const auto& [aj, s] : t.scalars) ++scalars[s.str()];
        }
    CheckResult out = summarize("total-complex identification", rs);
    for (const auto& [s, n] : scalars) out.detail += "; prefactor " + s + " on " + std::to_string(n) + " blocks";
    return out;
}

CheckResult isomorphisms(const Context& c) {
    return all_of("group isomorphisms", group_isomorphism_checks(c.dc, c.brst, {6, 3}));
}

CheckResult exactness(const Context& c) {
    std::vector<CheckResult> parts;
    for (int k = 2; k <= 4; ++k)
        for (auto& r : exactness_checks(c.dc, k, 6)) parts.push_back(r);
    return all_of("corollary exactness", parts);
}

CheckResult lemma(const Context& c) {
    CheckResult r = lemma_check(c.dc, c.brst, {1, 2}, 6);
    r.name = "lemma decomposition";
    return r;
}

CheckResult abstract_theorem(const Context& c) {
    return all_of("abstract theorem", abstract_theorem_checks(c.dc, {6, 3}));
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    Context ctx;
    std::vector<std::function<CheckResult(const Context&)>> criteria{
        nilpotence,   master_equation,    h0_dimensions,        odd_vanishing, even_tail,      h2_structure,
        periodicity,  contractible_pairs, obstruction,          gla_validity,  double_complex, total_identification,
        isomorphisms, exactness,          lemma,                abstract_theorem};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CheckResult r = criteria[i](ctx);
        failed += r.pass ? 0 : 1;
        std::printf("%s criterion %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    CheckResult h2 = corrected_h2_check(ctx.dc, ctx.brst, 6);
    std::printf("info H2 with the joint image of d_- on Ker d_+: %s (%s)\n", h2.pass ? "holds" : "fails",
                h2.detail.c_str());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of %zu criteria failed, %.1f s\n", failed, criteria.size(), secs);
    return failed;
}
