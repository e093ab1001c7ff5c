#pragma once

#include "brstlab/errors.hpp"
#include "brstlab/rational.hpp"
#include "brstlab/superpoly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brstlab {

// Generator registry with the field <-> antifield pairing.
class FieldTable {
public:
    GenIndex add_field(std::string id, int ghost, int weight) {
        GenIndex g = reg_.add({std::move(id), ghost, parity_of_ghost(ghost), weight, std::nullopt});
        fields_.push_back(g);
        return g;
    }

    // Adds antifields (ghost -1-g, opposite parity, weight 2) for every field still lacking one.
    void add_missing_antifields() {
        for (GenIndex f : fields_) {
            if (antifield_.contains(f)) continue;
            const Generator& g = reg_[f];
            int ghost = -1 - g.ghost;
            GenIndex a = reg_.add({g.id + "*", ghost, parity_of_ghost(ghost), 2, f});
            antifield_.emplace(f, a);
            field_of_.emplace(a, f);
        }
    }

    [[nodiscard]] const GeneratorRegistry& registry() const { return reg_; }
    [[nodiscard]] const std::vector<GenIndex>& fields() const { return fields_; }
    [[nodiscard]] bool is_antifield(GenIndex g) const { return field_of_.contains(g); }

    [[nodiscard]] GenIndex antifield(GenIndex field) const {
        auto it = antifield_.find(field);
        if (it == antifield_.end()) throw MissingAntifield("no antifield for " + reg_[field].id);
        return it->second;
    }
    [[nodiscard]] GenIndex index(std::string_view id) const { return reg_.index(id); }
    [[nodiscard]] SuperPoly gen(std::string_view id) const { return SuperPoly::generator(reg_, id); }
    [[nodiscard]] SuperPoly gen(GenIndex g) const { return SuperPoly::generator(g, reg_[g].parity); }

    [[nodiscard]] bool has_complete_pairing() const { return antifield_.size() == fields_.size(); }

    [[nodiscard]] bool contains_antifield(const SuperPoly& p) const {
        for (const auto& [m, c] : p.terms())
            for (const auto& f : m.factors())
                if (is_antifield(f.gen)) return true;
        return false;
    }

private:
    GeneratorRegistry reg_;
    std::vector<GenIndex> fields_;
    std::map<GenIndex, GenIndex> antifield_;
    std::map<GenIndex, GenIndex> field_of_;
};

// M1..M4 (ghost 0), C1..C3 (ghost 1), E (ghost 2), followed by their antifields.
inline FieldTable u2_field_table() {
    FieldTable t;
    for (int a = 1; a <= 4; ++a) t.add_field("M" + std::to_string(a), 0, 1);
    for (int i = 1; i <= 3; ++i) t.add_field("C" + std::to_string(i), 1, 1);
    t.add_field("E", 2, 1);
    t.add_missing_antifields();
    return t;
}

// Totally antisymmetric symbol on {0,1,2}.
inline int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

struct ModelSpec {
    std::string name = "u2";
    // S0 = sum over k of (M1^2+M2^2+M3^2)^k * g_k(M4); g_k given by ascending M4-power coefficients.
    std::map<unsigned, std::vector<Rational>> s0_coefficients;
    std::array<Rational, 3> alpha{Rational(1), Rational(1), Rational(1)};
    Rational beta{1};
    SuperPoly t_poly;  // polynomial in M1..M4

    void validate(const FieldTable& table) const {
        for (const auto& a : alpha)
            if (a.is_zero()) throw InvalidSpec("alpha entries must be nonzero");
        if (beta.is_zero()) throw InvalidSpec("beta must be nonzero");
        for (const auto& [m, c] : t_poly.terms())
            for (const auto& f : m.factors()) {
                const Generator& g = table.registry()[f.gen];
                if (g.ghost != 0 || table.is_antifield(f.gen) || g.id.size() != 2 || g.id[0] != 'M')
                    throw InvalidSpec("T may only contain M1..M4");
            }
    }

    [[nodiscard]] SuperPoly s0(const FieldTable& table) const {
        SuperPoly r2 = table.gen("M1").pow(2) + table.gen("M2").pow(2) + table.gen("M3").pow(2);
        SuperPoly m4 = table.gen("M4");
        SuperPoly out;
        for (const auto& [k, coeffs] : s0_coefficients) {
            SuperPoly g;
            for (std::size_t s = 0; s < coeffs.size(); ++s) g += m4.pow(static_cast<unsigned>(s)) * coeffs[s];
            out += r2.pow(k) * g;
        }
        return out;
    }

    [[nodiscard]] bool is_standard() const {
        return alpha[0] == Rational(1) && alpha[1] == Rational(1) && alpha[2] == Rational(1);
    }
};

// S0 = M4^2 + M1^2 + M2^2 + M3^2 with alpha = (1,1,1), beta = 1, T = 0.
inline ModelSpec default_model_spec() {
    ModelSpec s;
    s.s0_coefficients[0] = {Rational(0), Rational(0), Rational(1)};
    s.s0_coefficients[1] = {Rational(1)};
    return s;
}

namespace detail {
inline std::string idx(const char* base, int i) { return base + std::to_string(i + 1); }
}  // namespace detail

// Odd-odd sums over an antisymmetric index pair run over j < k only.
inline SuperPoly build_extended_action(const ModelSpec& spec, const FieldTable& table) {
    spec.validate(table);
    using detail::idx;
    const auto& a = spec.alpha;
    auto M = [&](int i) { return table.gen(idx("M", i)); };
    auto C = [&](int i) { return table.gen(idx("C", i)); };
    auto Mstar = [&](int i) { return table.gen(idx("M", i) + "*"); };
    auto Cstar = [&](int i) { return table.gen(idx("C", i) + "*"); };
    SuperPoly E = table.gen("E");

    SuperPoly s = spec.s0(table);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (int e = levi_civita(i, j, k); e != 0) s += Mstar(i) * M(j) * C(k) * (a[k] * Rational(e));

    SuperPoly mcc;  // sum over a, b<c of eps_abc alpha_b alpha_c M_a C_b C_c, divided by alpha_i below
    for (int x = 0; x < 3; ++x)
        for (int b = 0; b < 3; ++b)
            for (int c = b + 1; c < 3; ++c)
                if (int e = levi_civita(x, b, c); e != 0) mcc += M(x) * C(b) * C(c) * (a[b] * a[c] * Rational(e));

    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        int k = (i + 2) % 3;
        SuperPoly bracket = M(i) * E * (spec.beta * a[j] * a[k] / Rational(2));
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q)
                if (int e = levi_civita(i, p, q); e != 0)
                    bracket += C(p) * C(q) * (a[p] * a[q] / a[i] * Rational(e));
        if (!spec.t_poly.is_zero()) bracket += M(i) * spec.t_poly * mcc * a[i].inverse();
        s += Cstar(i) * bracket;
    }
    return s;
}

// {F,G} = sum over fields of dR F/d(phi*) dL G/d(phi) - dR F/d(phi) dL G/d(phi*), so {phi*, phi} = 1.
inline SuperPoly antibracket(const SuperPoly& f, const SuperPoly& g, const FieldTable& table) {
    SuperPoly out;
    for (GenIndex phi : table.fields()) {
        GenIndex star = table.antifield(phi);
        SuperPoly a = f.partial_right(star);
        if (!a.is_zero()) {
            SuperPoly b = g.partial_left(phi);
            if (!b.is_zero()) out += a * b;
        }
        SuperPoly c = f.partial_right(phi);
        if (!c.is_zero()) {
            SuperPoly d = g.partial_left(star);
            if (!d.is_zero()) out -= c * d;
        }
    }
    return out;
}

inline SuperPoly check_cme(const SuperPoly& s, const FieldTable& table) { return antibracket(s, s, table); }

// Odd derivation determined by its values on generators; unlisted generators map to 0.
class Differential {
public:
    Differential() = default;
    explicit Differential(std::map<GenIndex, SuperPoly> rules) : rules_(std::move(rules)) {}

    [[nodiscard]] const std::map<GenIndex, SuperPoly>& rules() const { return rules_; }
    [[nodiscard]] SuperPoly rule(GenIndex g) const {
        auto it = rules_.find(g);
        return it == rules_.end() ? SuperPoly() : it->second;
    }

    [[nodiscard]] SuperPoly apply(const Monomial& m) const {
        const auto& fs = m.factors();
        SuperPoly out;
        bool prefix_odd = false;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Factor& f = fs[i];
            SuperPoly dx = rule(f.gen);
            if (!dx.is_zero()) {
                std::vector<Factor> pre(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i));
                std::vector<Factor> post(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1, fs.end());
                SuperPoly mid = dx * Rational(static_cast<long>(f.exp));
                if (f.exp > 1) {
                    Factor rest = f;
                    --rest.exp;
                    mid = SuperPoly::term(Rational(1), Monomial::from_factors({rest})) * mid;
                }
                SuperPoly term = SuperPoly::term(Rational(prefix_odd ? -1 : 1), Monomial::from_factors(pre)) * mid *
                                 SuperPoly::term(Rational(1), Monomial::from_factors(post));
                out += term;
            }
            if (f.odd) prefix_odd = !prefix_odd;
        }
        return out;
    }

    [[nodiscard]] SuperPoly apply(const SuperPoly& p) const {
        SuperPoly out;
        for (const auto& [m, c] : p.terms()) out += apply(m) * c;
        return out;
    }

private:
    std::map<GenIndex, SuperPoly> rules_;
};

inline void require_fermion(const SuperPoly& psi, const FieldTable& table) {
    if (table.contains_antifield(psi)) throw NotAFermion("gauge-fixing fermion contains antifields");
    for (const auto& [m, c] : psi.terms()) {
        if (m.ghost(table.registry()) != -1) throw NotAFermion("gauge-fixing fermion must have ghost number -1");
        if (!m.is_odd()) throw NotAFermion("gauge-fixing fermion must be odd");
    }
}

// Antifield -> dL psi / d(field) for every field.
inline std::map<GenIndex, SuperPoly> gauge_rules(const SuperPoly& psi, const FieldTable& table) {
    require_fermion(psi, table);
    std::map<GenIndex, SuperPoly> rules;
    for (GenIndex phi : table.fields()) rules[table.antifield(phi)] = psi.partial_left(phi);
    return rules;
}

inline SuperPoly gauge_fix(const SuperPoly& s, const SuperPoly& psi, const FieldTable& table) {
    return s.substitute(gauge_rules(psi, table));
}

// g -> {S, g} restricted to the gauge-fixed surface (psi = 0: antifields set to 0).
inline Differential brst_differential(const SuperPoly& s, const FieldTable& table, const SuperPoly& psi = {}) {
    SuperPoly residual = check_cme(s, table);
    if (!residual.is_zero())
        throw CMEViolated("classical master equation fails: " + residual.render(table.registry()));
    auto rules = gauge_rules(psi, table);
    std::map<GenIndex, SuperPoly> d;
    for (GenIndex g : table.fields()) {
        SuperPoly v = antibracket(s, table.gen(g), table).substitute(rules);
        if (!v.is_zero()) d.emplace(g, std::move(v));
    }
    return Differential(std::move(d));
}

// Sum over k of (-1)^{e(g)(1+e(k))} dS|psi/d(phi_k) * d^2 S / d(phi_k*) d(phi_g*), on the surface.
inline SuperPoly onshell_obstruction(const SuperPoly& s, const SuperPoly& psi, GenIndex g, const FieldTable& table) {
    auto rules = gauge_rules(psi, table);
    SuperPoly fixed = s.substitute(rules);
    SuperPoly dg = s.partial_left(table.antifield(g));
    bool g_odd = table.registry()[g].parity == Parity::odd;
    SuperPoly out;
    for (GenIndex k : table.fields()) {
        SuperPoly second = dg.partial_left(table.antifield(k));
        if (second.is_zero()) continue;
        bool k_odd = table.registry()[k].parity == Parity::odd;
        int sign = (g_odd && !k_odd) ? -1 : 1;
        out += fixed.partial_left(k) * second.substitute(rules) * Rational(sign);
    }
    return out;
}

struct AuxiliaryExtension {
    FieldTable table;
    SuperPoly s_aux;
};

// Auxiliary pairs for reducibility level L: for i = 0..L and j = 1..i+1 one pair per field of
// ghost i+1, with deg(B) = j-i-2 (j odd) or i-j+1 (j even) and deg(h) = deg(B)+1.
inline AuxiliaryExtension add_auxiliary_pairs(const FieldTable& base, unsigned levels_max) {
    struct Pair {
        GenIndex b;
        GenIndex h;
    };
    AuxiliaryExtension out{base, SuperPoly()};
    FieldTable& t = out.table;
    std::vector<Pair> pairs;
    std::vector<std::pair<std::string, std::string>> names;
    for (unsigned i = 0; i <= levels_max; ++i) {
        int mult = 0;
        for (GenIndex f : base.fields())
            if (base.registry()[f].ghost == static_cast<int>(i) + 1) ++mult;
        for (unsigned j = 1; j <= i + 1; ++j) {
            int deg = (j % 2 == 1) ? static_cast<int>(j) - static_cast<int>(i) - 2
                                   : static_cast<int>(i) - static_cast<int>(j) + 1;
            for (int c = 1; c <= mult; ++c) {
                std::string b;
                std::string h;
                if (i == 0) {
                    b = "B" + std::to_string(c);
                    h = "h" + std::to_string(c);
                } else if (i == 1 && mult == 1) {
                    b = "A" + std::to_string(j);
                    h = "k" + std::to_string(j);
                } else {
                    std::string tag = std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(c);
                    b = "B" + tag;
                    h = "h" + tag;
                }
                GenIndex gb = t.add_field(b, deg, 1);
                GenIndex gh = t.add_field(h, deg + 1, 2);
                pairs.push_back({gb, gh});
            }
        }
    }
    t.add_missing_antifields();
    for (const auto& p : pairs) out.s_aux += t.gen(t.antifield(p.b)) * t.gen(p.h);
    return out;
}

// Total action and field table of the U(2) model with the five auxiliary pairs (L = 1).
struct TotalTheory {
    FieldTable table;
    SuperPoly action;
};

inline TotalTheory u2_total_theory(const ModelSpec& spec) {
    FieldTable base = u2_field_table();
    AuxiliaryExtension ext = add_auxiliary_pairs(base, 1);
    SuperPoly s = build_extended_action(spec, ext.table) + ext.s_aux;
    return {std::move(ext.table), std::move(s)};
}

}  // namespace brstlab
