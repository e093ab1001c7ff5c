#pragma once

#include "brstlab/bvkernel.hpp"
#include "brstlab/checks.hpp"
#include "brstlab/cochain.hpp"
#include "brstlab/cohomology.hpp"
#include "brstlab/glacohom.hpp"
#include "brstlab/lie_module.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace brstlab {

namespace detail {
inline CheckResult zero_poly_check(std::string name, const SuperPoly& p, const GeneratorRegistry& reg) {
    return {std::move(name), p.is_zero(), p.is_zero() ? "0" : "residual " + p.render(reg)};
}

inline void append_prefixed(std::vector<CheckResult>& out, const std::string& prefix, std::vector<CheckResult> rs) {
    for (auto& r : rs) {
        r.name = prefix + ": " + r.name;
        out.push_back(std::move(r));
    }
}
}  // namespace detail

inline CheckResult cme_check(const ModelSpec& spec) {
    FieldTable t = u2_field_table();
    spec.validate(t);
    return detail::zero_poly_check("cme", check_cme(build_extended_action(spec, t), t), t.registry());
}

// d(d(g)) = 0 for every field of the gauge-fixed extended theory.
inline CheckResult symbolic_nilpotence(const ModelSpec& spec) {
    FieldTable t = u2_field_table();
    Differential d = brst_differential(build_extended_action(spec, t), t);
    std::vector<CheckResult> inst;
    for (GenIndex g : t.fields())
        inst.push_back(detail::zero_poly_check(t.registry()[g].id, d.apply(d.apply(t.gen(g))), t.registry()));
    return summarize("d-squared symbolic", inst);
}

// The obstruction polynomial of every field of the total theory, psi = 0.
inline CheckResult obstruction_check(const ModelSpec& spec) {
    TotalTheory tot = u2_total_theory(spec);
    std::vector<CheckResult> inst;
    for (GenIndex g : tot.table.fields())
        inst.push_back(detail::zero_poly_check(tot.table.registry()[g].id,
                                               onshell_obstruction(tot.action, SuperPoly(), g, tot.table),
                                               tot.table.registry()));
    return summarize("obstruction", inst);
}

// cme, d-squared (symbolic and blockwise for ghost <= ghost_max), s0-closed, obstruction.
// The blockwise part needs T = 0 and is skipped otherwise.
inline std::vector<CheckResult> brst_checks(const ModelSpec& spec, int ghost_max, int weight_max) {
    std::vector<CheckResult> out{cme_check(spec)};
    if (!out.front().pass) return out;
    CheckResult sym = symbolic_nilpotence(spec);
    CheckResult d2{"d-squared", sym.pass, sym.detail};
    if (spec.t_poly.is_zero()) {
        ComplexSlice s = extended_slice(spec, 0, ghost_max + 1, weight_max + 1);
        CheckResult blocks = summarize("blockwise", blockwise_nilpotence(s, ghost_max, weight_max));
        d2.pass = d2.pass && blocks.pass;
        d2.detail = "symbolic: " + sym.detail + "; blockwise: " + blocks.detail;
    } else {
        d2.detail = "symbolic: " + sym.detail + "; blockwise skipped for T != 0";
    }
    out.push_back(d2);
    FieldTable t = u2_field_table();
    Differential d = brst_differential(build_extended_action(spec, t), t);
    out.push_back(detail::zero_poly_check("s0-closed", d.apply(spec.s0(t)), t.registry()));
    out.push_back(obstruction_check(spec));
    return out;
}

// With eps = -1, p = 0, n = 1 and beta = identity, (j+1) times the generalized coboundary is the
// Chevalley-Eilenberg matrix of the representation.
inline CheckResult ce_reduction_check(const LieAlgebraData& g, const Representation& rep, int j_max,
                                      const std::string& label) {
    ModuleOfOrderP m;
    m.p = 0;
    ModuleSpace v;
    v.weights.assign(rep.dimension(), 0);
    v.labels.assign(rep.dimension(), "");
    m.spaces.push_back(v);
    for (std::size_t x = 0; x < g.dimension(); ++x) m.alpha.emplace(std::make_pair(x, 1), rep.action[x]);
    QMatrix id(rep.dimension(), rep.dimension());
    for (std::size_t k = 0; k < rep.dimension(); ++k) id.set(k, k, Rational(1));
    m.beta.emplace(1, id);
    GLAInstance inst(g, std::move(m), -1);
    std::vector<CheckResult> rs;
    for (int j = 0; j <= j_max; ++j) {
        QMatrix lhs = gla_coboundary(inst, j, 1).scaled(Rational(j + 1));
        QMatrix rhs = ce_differential(g, rep, j);
        rs.push_back({"j=" + std::to_string(j), lhs == rhs, std::to_string((lhs - rhs).nnz()) + " differing entries"});
    }
    return summarize("ce-reduction " + label, rs);
}

// The su(2) action on polynomials of degree 0..max_degree, all cochain degrees.
inline CheckResult su2_ce_reduction(int max_degree) {
    FieldTable t = u2_field_table();
    std::vector<CheckResult> rs;
    for (int deg = 0; deg <= max_degree; ++deg)
        rs.push_back(ce_reduction_check(su2(), su2_polynomial_action(t, deg), 2, "deg=" + std::to_string(deg)));
    return summarize("ce-reduction", rs);
}

// d_eps^2 = 0 on the U(2) instance at every in-range index, per weight.
inline CheckResult gla_square_check(const GLAInstance& inst, int weight_bound) {
    std::vector<CheckResult> rs;
    const auto& m = inst.module();
    for (int i : m.indices()) {
        int ip = i + m.p;
        if (!m.is_index(ip)) continue;
        for (int j = 0; j <= 3; ++j)
            for (int w = 0; w <= weight_bound; ++w) {
                QMatrix first = gla_coboundary(inst, j, i, w);
                QMatrix second = gla_coboundary(inst, j + 1, ip, w + inst.weight_step());
                QMatrix p = second * first;
                rs.push_back({"i=" + std::to_string(i) + " j=" + std::to_string(j) + " w=" + std::to_string(w),
                              p.is_zero(), std::to_string(p.nnz()) + " nonzero entries"});
            }
    }
    return summarize("d-squared", rs);
}

struct GlaBounds {
    int weight_max = 6;  // weight up to which every identity is checked
    int k_max = 3;
    int total_k_max = 8;
};

// Full double-complex suite against the BRST complex of `spec` (alpha = (1,1,1), T = 0).
inline std::vector<CheckResult> gla_checks(const ModelSpec& spec, GlaBounds b = {}) {
    DoubleComplexSlice dc(b.weight_max + 1);
    ComplexSlice brst = extended_slice(spec, 0, std::max(b.total_k_max, 2 * b.k_max + 1), b.weight_max + 1);
    std::vector<CheckResult> out;
    out.push_back(summarize("module-conditions", check_module_conditions(dc.instance())));
    out.push_back(gla_square_check(dc.instance(), b.weight_max));
    out.push_back(su2_ce_reduction(2));
    detail::append_prefixed(out, "double-complex", double_complex_checks(dc, b.weight_max));
    for (int k = 2; k <= 4; ++k)
        detail::append_prefixed(out, "exactness", exactness_checks(dc, k, b.weight_max));
    detail::append_prefixed(out, "group-isomorphisms", group_isomorphism_checks(dc, brst, {b.weight_max, b.k_max}));
    std::vector<CheckResult> tc;
    for (int k = 0; k <= b.total_k_max; ++k)
        for (int w = 0; w <= b.weight_max; ++w) tc.push_back(total_complex_compare(dc, brst, k, w).result);
    out.push_back(summarize("total-compare", tc));
    CheckResult lemma = lemma_check(dc, brst, {1, 2}, b.weight_max);
    lemma.name = "lemma";
    out.push_back(lemma);
    detail::append_prefixed(out, "abstract-theorem", abstract_theorem_checks(dc, {b.weight_max, b.k_max}));
    CheckResult h2 = corrected_h2_check(dc, brst, b.weight_max);
    h2.name = "h2-corrected";
    out.push_back(h2);
    return out;
}

// Total-complex identification and group isomorphisms only.
inline std::vector<CheckResult> gla_compare_checks(const ModelSpec& spec, GlaBounds b = {}) {
    DoubleComplexSlice dc(b.weight_max + 1);
    ComplexSlice brst = extended_slice(spec, 0, std::max(b.total_k_max, 2 * b.k_max + 1), b.weight_max + 1);
    std::vector<CheckResult> out;
    for (int k = 0; k <= b.total_k_max; ++k)
        for (int w = 0; w <= b.weight_max; ++w) {
            CheckResult r = total_complex_compare(dc, brst, k, w).result;
            r.name = "total-compare: " + r.name;
            out.push_back(std::move(r));
        }
    detail::append_prefixed(out, "group-isomorphisms", group_isomorphism_checks(dc, brst, {b.weight_max, b.k_max}));
    return out;
}

}  // namespace brstlab
