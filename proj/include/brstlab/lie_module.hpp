#pragma once

#include "brstlab/checks.hpp"
#include "brstlab/errors.hpp"
#include "brstlab/qmatrix.hpp"
#include "brstlab/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brstlab {

using Triple = std::array<std::size_t, 3>;

// Finite-dimensional Lie algebra: [x_a, x_b] = sum_c f(a, b, c) x_c.
// An optional symmetric product supplies the anticommutator used by even-parity complexes.
class LieAlgebraData {
public:
    LieAlgebraData() = default;
    LieAlgebraData(std::size_t dimension, std::map<Triple, Rational> structure_constants,
                   std::optional<std::map<Triple, Rational>> anticommutator = std::nullopt)
        : dim_(dimension), f_(prune(std::move(structure_constants))) {
        if (anticommutator) anti_ = prune(std::move(*anticommutator));
        for (const auto& [k, v] : f_)
            if (k[0] >= dim_ || k[1] >= dim_ || k[2] >= dim_) throw InvalidSpec("structure constant index out of range");
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b)
                for (std::size_t c = 0; c < dim_; ++c) {
                    if (f(a, b, c) != -f(b, a, c)) throw InvalidSpec("structure constants are not antisymmetric");
                    if (anti_ && symmetric(a, b, c) != symmetric(b, a, c))
                        throw InvalidSpec("anticommutator is not symmetric");
                }
        if (!jacobi_holds()) throw InvalidSpec("structure constants violate the Jacobi identity");
    }

    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] const std::map<Triple, Rational>& structure_constants() const { return f_; }
    [[nodiscard]] bool has_anticommutator() const { return anti_.has_value(); }

    [[nodiscard]] Rational f(std::size_t a, std::size_t b, std::size_t c) const { return lookup(f_, a, b, c); }
    [[nodiscard]] Rational symmetric(std::size_t a, std::size_t b, std::size_t c) const {
        return anti_ ? lookup(*anti_, a, b, c) : Rational();
    }

    // Coefficients of [x_a, x_b]_eps: the Lie bracket for eps = -1, the anticommutator for eps = +1.
    [[nodiscard]] std::vector<Rational> bracket(std::size_t a, std::size_t b, int eps) const {
        if (eps == 1 && !anti_) throw ConditionsViolated("even parity needs an anticommutator on h");
        std::vector<Rational> out(dim_);
        for (std::size_t c = 0; c < dim_; ++c) out[c] = eps == 1 ? symmetric(a, b, c) : f(a, b, c);
        return out;
    }

    [[nodiscard]] bool jacobi_holds() const {
        // sum over cyclic (a,b,c) of [[x_a, x_b], x_c] = 0, coefficient by coefficient.
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b)
                for (std::size_t c = 0; c < dim_; ++c)
                    for (std::size_t e = 0; e < dim_; ++e) {
                        Rational s;
                        for (std::size_t d = 0; d < dim_; ++d)
                            s += f(a, b, d) * f(d, c, e) + f(b, c, d) * f(d, a, e) + f(c, a, d) * f(d, b, e);
                        if (!s.is_zero()) return false;
                    }
        return true;
    }

private:
    static std::map<Triple, Rational> prune(std::map<Triple, Rational> m) {
        std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
        return m;
    }
    static Rational lookup(const std::map<Triple, Rational>& m, std::size_t a, std::size_t b, std::size_t c) {
        auto it = m.find({a, b, c});
        return it == m.end() ? Rational() : it->second;
    }

    std::size_t dim_ = 0;
    std::map<Triple, Rational> f_;
    std::optional<std::map<Triple, Rational>> anti_;
};

// su(2) in the basis x_k = i sigma_k / 2, so [x_a, x_b] = -eps_abc x_c.
inline LieAlgebraData su2() {
    std::map<Triple, Rational> f;
    const std::array<Triple, 3> cyc{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
    for (auto [a, b, c] : cyc) {
        f[{a, b, c}] = Rational(-1);
        f[{b, a, c}] = Rational(1);
    }
    return LieAlgebraData(3, std::move(f));
}

// Abelian algebra of the given dimension with zero anticommutator.
inline LieAlgebraData abelian(std::size_t dimension) { return LieAlgebraData(dimension, {}, std::map<Triple, Rational>{}); }

// A family of spaces of known dimension, each basis vector tagged with a weight and a label.
struct ModuleSpace {
    std::vector<int> weights;
    std::vector<std::string> labels;
    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

// Spaces V_1..V_n with maps alpha_j(x_a): V_j -> V_{j+p} and beta_j: V_j -> V_{j+p}.
// Missing maps are zero.
struct ModuleOfOrderP {
    int p = 0;
    std::vector<ModuleSpace> spaces;
    std::map<std::pair<std::size_t, int>, QMatrix> alpha;  // (generator, j)
    std::map<int, QMatrix> beta;

    [[nodiscard]] int n() const { return static_cast<int>(spaces.size()); }
    [[nodiscard]] bool in_range(int i) const { return i >= 1 && i <= n(); }
    [[nodiscard]] const ModuleSpace& space(int i) const {
        if (!in_range(i)) throw InvalidSpec("module index " + std::to_string(i) + " out of range");
        return spaces[static_cast<std::size_t>(i - 1)];
    }

    // j = 1..n-p for p >= 0, j = 1-p..n for p < 0.
    [[nodiscard]] std::vector<int> indices() const {
        std::vector<int> out;
        int lo = p >= 0 ? 1 : 1 - p;
        int hi = p >= 0 ? n() - p : n();
        for (int j = lo; j <= hi; ++j) out.push_back(j);
        return out;
    }
    [[nodiscard]] bool is_index(int j) const {
        auto idx = indices();
        return std::find(idx.begin(), idx.end(), j) != idx.end();
    }

    [[nodiscard]] QMatrix alpha_at(std::size_t generator, int j) const {
        auto it = alpha.find({generator, j});
        if (it != alpha.end()) return it->second;
        return QMatrix(space(j + p).size(), space(j).size());
    }
    [[nodiscard]] QMatrix beta_at(int j) const {
        auto it = beta.find(j);
        if (it != beta.end()) return it->second;
        return QMatrix(space(j + p).size(), space(j).size());
    }

    void validate(std::size_t h_dimension) const {
        for (const auto& [key, m] : alpha) {
            if (key.first >= h_dimension) throw InvalidSpec("alpha generator out of range");
            if (!is_index(key.second)) throw InvalidSpec("alpha index " + std::to_string(key.second) + " out of range");
            if (m.rows() != space(key.second + p).size() || m.cols() != space(key.second).size())
                throw InvalidSpec("alpha_" + std::to_string(key.second) + " has the wrong shape");
        }
        for (const auto& [j, m] : beta) {
            if (!is_index(j)) throw InvalidSpec("beta index " + std::to_string(j) + " out of range");
            if (m.rows() != space(j + p).size() || m.cols() != space(j).size())
                throw InvalidSpec("beta_" + std::to_string(j) + " has the wrong shape");
        }
    }
};

// Conditions (1)-(3) on every generator (pair) and index, as exact matrix identities.
namespace detail {
inline std::vector<CheckResult> module_conditions(const LieAlgebraData& h, const ModuleOfOrderP& m, int eps) {
    std::vector<CheckResult> out;
    auto report = [&](std::string name, const QMatrix& residual) {
        out.push_back({std::move(name), residual.is_zero(), std::to_string(residual.nnz()) + " nonzero residual entries"});
    };
    for (int i : m.indices()) {
        int ip = i + m.p;
        bool chain = m.is_index(ip);
        std::string at = " i=" + std::to_string(i);
        for (std::size_t x = 0; x < h.dimension(); ++x) {
            if (!chain) continue;
            QMatrix lhs = m.alpha_at(x, ip) * m.beta_at(i) + (m.beta_at(ip) * m.alpha_at(x, i)).scaled(Rational(eps));
            report("condition-1" + at + " x=" + std::to_string(x), lhs);
        }
        for (std::size_t x1 = 0; x1 < h.dimension(); ++x1)
            for (std::size_t x2 = 0; x2 < h.dimension(); ++x2) {
                if (!chain) continue;
                QMatrix lhs = m.alpha_at(x2, ip) * m.alpha_at(x1, i);
                lhs = m.alpha_at(x1, ip) * m.alpha_at(x2, i) + lhs.scaled(Rational(eps));
                QMatrix bracket(m.space(ip + m.p).size(), m.space(i).size());
                bool beta_zero = m.beta_at(ip).is_zero();
                if (!beta_zero) {
                    auto coeffs = h.bracket(x1, x2, eps);
                    for (std::size_t c = 0; c < coeffs.size(); ++c)
                        if (!coeffs[c].is_zero()) bracket = bracket + m.alpha_at(c, i).scaled(coeffs[c]);
                    bracket = m.beta_at(ip) * bracket;
                }
                report("condition-2" + at + " x1=" + std::to_string(x1) + " x2=" + std::to_string(x2), lhs - bracket);
            }
        if (eps == 1 && chain) report("condition-3" + at, m.beta_at(ip) * m.beta_at(i));
    }
    return out;
}
}  // namespace detail

// Lie algebra h, module of order p and parity eps. h_weights tags the generators of h so that
// cochains carry a total weight; weight_step is the weight shift of the coboundary.
class GLAInstance {
public:
    GLAInstance(LieAlgebraData h, ModuleOfOrderP module, int epsilon, std::vector<int> h_weights = {},
                int weight_step = 0)
        : h_(std::move(h)), module_(std::move(module)), eps_(epsilon), h_weights_(std::move(h_weights)),
          weight_step_(weight_step) {
        if (eps_ != 1 && eps_ != -1) throw InvalidSpec("parity must be +1 or -1");
        if (h_weights_.empty()) h_weights_.assign(h_.dimension(), 0);
        if (h_weights_.size() != h_.dimension()) throw InvalidSpec("one weight per generator of h");
        module_.validate(h_.dimension());
        conditions_hold_ = all_pass(detail::module_conditions(h_, module_, eps_));
    }

    [[nodiscard]] const LieAlgebraData& h() const { return h_; }
    [[nodiscard]] const ModuleOfOrderP& module() const { return module_; }
    [[nodiscard]] int epsilon() const { return eps_; }
    [[nodiscard]] int p() const { return module_.p; }
    [[nodiscard]] const std::vector<int>& h_weights() const { return h_weights_; }
    [[nodiscard]] int weight_step() const { return weight_step_; }
    [[nodiscard]] bool conditions_hold() const { return conditions_hold_; }

private:
    LieAlgebraData h_;
    ModuleOfOrderP module_;
    int eps_;
    std::vector<int> h_weights_;
    int weight_step_;
    bool conditions_hold_ = false;
};

inline std::vector<CheckResult> check_module_conditions(const GLAInstance& inst) {
    return detail::module_conditions(inst.h(), inst.module(), inst.epsilon());
}

// Basis tuples of j-cochains on an n-dimensional algebra: non-decreasing tuples for eps = +1
// (symmetric maps), strictly increasing ones for eps = -1 (antisymmetric maps).
class CochainTuples {
public:
    CochainTuples(std::size_t n, int j, int eps) : eps_(eps) {
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t start) -> void {
            if (static_cast<int>(cur.size()) == j) {
                index_.emplace(cur, tuples_.size());
                tuples_.push_back(cur);
                return;
            }
            for (std::size_t a = start; a < n; ++a) {
                cur.push_back(a);
                self(self, eps == 1 ? a : a + 1);
                cur.pop_back();
            }
        };
        if (j >= 0) rec(rec, 0);
    }

    [[nodiscard]] std::size_t size() const { return tuples_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& operator[](std::size_t i) const { return tuples_.at(i); }

    // Sign and basis index of an arbitrary argument tuple; nullopt when an antisymmetric map vanishes.
    [[nodiscard]] std::optional<std::pair<int, std::size_t>> locate(std::vector<std::size_t> t) const {
        int sign = 1;
        for (std::size_t i = 1; i < t.size(); ++i)
            for (std::size_t k = i; k > 0 && t[k - 1] > t[k]; --k) {
                std::swap(t[k - 1], t[k]);
                sign = -sign;
            }
        if (eps_ == -1) {
            for (std::size_t i = 1; i < t.size(); ++i)
                if (t[i] == t[i - 1]) return std::nullopt;
        } else {
            sign = 1;
        }
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return std::make_pair(sign, it->second);
    }

private:
    int eps_;
    std::vector<std::vector<std::size_t>> tuples_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
};

namespace detail {
inline Rational sign_power(int eps, int e) { return (eps == -1 && e % 2 != 0) ? Rational(-1) : Rational(1); }

inline std::vector<std::size_t> drop(const std::vector<std::size_t>& t, std::size_t r) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (i != r) out.push_back(t[i]);
    return out;
}

// Cochain basis elements (tuple, vector) with optional weight filter, in tuple-major order.
struct CochainElements {
    std::vector<std::pair<std::size_t, std::size_t>> elems;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};

inline CochainElements cochain_elements(const CochainTuples& tuples, const ModuleSpace& v,
                                        const std::vector<int>& h_weights, std::optional<int> weight) {
    CochainElements out;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        int tw = 0;
        for (auto a : tuples[t]) tw += h_weights[a];
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (weight && tw + v.weights[k] != *weight) continue;
            out.index.emplace(std::make_pair(t, k), out.elems.size());
            out.elems.emplace_back(t, k);
        }
    }
    return out;
}
}  // namespace detail

// Coboundary d^{j,i}_eps from Sym^j_eps(h, V_i) to Sym^{j+1}_eps(h, V_{i+p}):
//   (1/(j+1)) [ sum_r eps^{r+1} alpha_i(x_r) phi(.., ^x_r, ..)
//               - sum_{r<s} eps^{r+s+1} beta_i phi([x_r, x_s]_eps, .., ^x_r, ^x_s, ..) ].
// The bracket-term sign eps^{r+s+1} gives the classical Chevalley-Eilenberg sign for eps = -1 and
// keeps d^2 = 0 for both parities. With a weight, domain and codomain are restricted to cochains of
// total weight `weight` and `weight + weight_step`. Targets outside V_1..V_n give a zero map.
inline QMatrix gla_coboundary(const GLAInstance& inst, int j, int i, std::optional<int> weight = std::nullopt) {
    if (!inst.conditions_hold()) throw ConditionsViolated("module conditions fail");
    const auto& m = inst.module();
    const auto& h = inst.h();
    int eps = inst.epsilon();
    if (j < 0 || !m.in_range(i)) throw InvalidSpec("cochain degree or module index out of range");
    CochainTuples dom_t(h.dimension(), j, eps);
    auto dom = detail::cochain_elements(dom_t, m.space(i), inst.h_weights(), weight);
    int target = i + m.p;
    if (!m.in_range(target) || !m.is_index(i)) return QMatrix(0, dom.elems.size());

    CochainTuples cod_t(h.dimension(), j + 1, eps);
    std::optional<int> cod_weight;
    if (weight) cod_weight = *weight + inst.weight_step();
    auto cod = detail::cochain_elements(cod_t, m.space(target), inst.h_weights(), cod_weight);

    std::vector<QMatrix> alpha;
    for (std::size_t x = 0; x < h.dimension(); ++x) alpha.push_back(m.alpha_at(x, i));
    QMatrix beta = m.beta_at(i);
    Rational prefactor = Rational(1) / Rational(j + 1);

    QMatrix out(cod.elems.size(), dom.elems.size());
    for (std::size_t col = 0; col < dom.elems.size(); ++col) {
        auto [t_in, v_in] = dom.elems[col];
        std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
        for (std::size_t T = 0; T < cod_t.size(); ++T) {
            const auto& args = cod_t[T];
            for (std::size_t r = 0; r < args.size(); ++r) {
                auto loc = dom_t.locate(detail::drop(args, r));
                if (!loc || loc->second != t_in) continue;
                Rational s = detail::sign_power(eps, static_cast<int>(r) + 2) * Rational(loc->first);
                for (const auto& [row, v] : alpha[args[r]].column(v_in)) acc[{T, row}] += s * v;
            }
            if (beta.column(v_in).empty()) continue;
            for (std::size_t r = 0; r < args.size(); ++r)
                for (std::size_t q = r + 1; q < args.size(); ++q) {
                    auto coeffs = h.bracket(args[r], args[q], eps);
                    auto rest = detail::drop(detail::drop(args, q), r);
                    for (std::size_t c = 0; c < coeffs.size(); ++c) {
                        if (coeffs[c].is_zero()) continue;
                        std::vector<std::size_t> full{c};
                        full.insert(full.end(), rest.begin(), rest.end());
                        auto loc = dom_t.locate(full);
                        if (!loc || loc->second != t_in) continue;
                        Rational s = -detail::sign_power(eps, static_cast<int>(r + q) + 3) * coeffs[c] *
                                     Rational(loc->first);
                        for (const auto& [row, v] : beta.column(v_in)) acc[{T, row}] += s * v;
                    }
                }
        }
        SparseVector colv;
        for (const auto& [key, v] : acc) {
            if (v.is_zero()) continue;
            auto it = cod.index.find(key);
            if (it == cod.index.end()) throw InhomogeneousDifferential("coboundary leaves the target weight");
            colv.emplace_back(it->second, v * prefactor);
        }
        std::sort(colv.begin(), colv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.set_column(col, colv);
    }
    return out;
}

// A representation of a Lie algebra on a finite-dimensional space: one matrix per generator.
struct Representation {
    std::vector<QMatrix> action;
    [[nodiscard]] std::size_t dimension() const { return action.empty() ? 0 : action.front().rows(); }
};

// omega([x_a, x_b]) = omega(x_a) omega(x_b) - omega(x_b) omega(x_a) for all a < b.
inline void require_representation(const LieAlgebraData& g, const Representation& rep) {
    if (rep.action.size() != g.dimension()) throw NotARepresentation("one matrix per generator required");
    for (std::size_t a = 0; a < g.dimension(); ++a)
        for (std::size_t b = a + 1; b < g.dimension(); ++b) {
            QMatrix lhs(rep.dimension(), rep.dimension());
            for (std::size_t c = 0; c < g.dimension(); ++c)
                if (!g.f(a, b, c).is_zero()) lhs = lhs + rep.action[c].scaled(g.f(a, b, c));
            QMatrix rhs = rep.action[a] * rep.action[b] - rep.action[b] * rep.action[a];
            if (!(lhs == rhs))
                throw NotARepresentation("bracket of generators " + std::to_string(a) + ", " + std::to_string(b) +
                                         " is not represented");
        }
}

// Classical Chevalley-Eilenberg coboundary from Lambda^j g* (x) V to Lambda^{j+1} g* (x) V:
//   d phi(x_1..x_{j+1}) = sum_r (-1)^{r+1} x_r . phi(.., ^x_r, ..)
//                       + sum_{r<s} (-1)^{r+s} phi([x_r, x_s], .., ^x_r, ^x_s, ..).
// Rows and columns are indexed by (increasing tuple) * dim V + vector index.
inline QMatrix ce_differential(const LieAlgebraData& g, const Representation& rep, int j) {
    require_representation(g, rep);
    std::size_t n = g.dimension();
    std::size_t dv = rep.dimension();
    CochainTuples in(n, j, -1);
    CochainTuples out_t(n, j + 1, -1);
    QMatrix out(out_t.size() * dv, in.size() * dv);
    for (std::size_t T = 0; T < out_t.size(); ++T) {
        const auto& args = out_t[T];
        for (std::size_t r = 0; r < args.size(); ++r) {
            auto loc = in.locate(detail::drop(args, r));
            if (!loc) continue;
            Rational s = Rational(r % 2 == 0 ? 1 : -1) * Rational(loc->first);
            const QMatrix& act = rep.action[args[r]];
            for (std::size_t v = 0; v < dv; ++v)
                for (const auto& [row, x] : act.column(v)) out.add(T * dv + row, loc->second * dv + v, s * x);
        }
        for (std::size_t r = 0; r < args.size(); ++r)
            for (std::size_t q = r + 1; q < args.size(); ++q) {
                auto rest = detail::drop(detail::drop(args, q), r);
                for (std::size_t c = 0; c < n; ++c) {
                    Rational f = g.f(args[r], args[q], c);
                    if (f.is_zero()) continue;
                    std::vector<std::size_t> full{c};
                    full.insert(full.end(), rest.begin(), rest.end());
                    auto loc = in.locate(full);
                    if (!loc) continue;
                    Rational s = Rational((r + q) % 2 == 0 ? 1 : -1) * f * Rational(loc->first);
                    for (std::size_t v = 0; v < dv; ++v) out.add(T * dv + v, loc->second * dv + v, s);
                }
            }
    }
    return out;
}

}  // namespace brstlab
