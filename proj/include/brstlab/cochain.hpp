#pragma once

#include "brstlab/bvkernel.hpp"
#include "brstlab/errors.hpp"
#include "brstlab/qmatrix.hpp"
#include "brstlab/superpoly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace brstlab {

class CochainBasis {
public:
    CochainBasis() = default;
    CochainBasis(int ghost, int weight, std::vector<Monomial> monomials)
        : ghost_(ghost), weight_(weight), monomials_(std::move(monomials)) {
        for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
    }

    [[nodiscard]] int ghost() const { return ghost_; }
    [[nodiscard]] int weight() const { return weight_; }
    [[nodiscard]] std::size_t size() const { return monomials_.size(); }
    [[nodiscard]] const std::vector<Monomial>& monomials() const { return monomials_; }
    [[nodiscard]] const Monomial& operator[](std::size_t i) const { return monomials_.at(i); }

    [[nodiscard]] std::optional<std::size_t> find(const Monomial& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Coordinates of a polynomial supported on this block.
    [[nodiscard]] SparseVector coordinates(const SuperPoly& p) const {
        SparseVector v;
        for (const auto& [m, c] : p.terms()) {
            auto i = find(m);
            if (!i) throw InhomogeneousDifferential("term outside block (" + std::to_string(ghost_) + ", " +
                                                    std::to_string(weight_) + ")");
            v.emplace_back(*i, c);
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

    [[nodiscard]] SuperPoly polynomial(const QVector& coords) const {
        if (coords.size() != size()) throw std::invalid_argument("coordinate vector has wrong length");
        SuperPoly p;
        for (std::size_t i = 0; i < coords.size(); ++i) p.add_term(monomials_[i], coords[i]);
        return p;
    }

private:
    int ghost_ = 0;
    int weight_ = 0;
    std::vector<Monomial> monomials_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

// All field monomials of the given weight, grouped by ghost number and sorted in MonomialOrder.
inline std::map<int, std::vector<Monomial>> enumerate_weight(const FieldTable& table, int weight) {
    std::map<int, std::vector<Monomial>> out;
    if (weight < 0) return out;
    const auto& fields = table.fields();
    const auto& reg = table.registry();
    std::vector<Factor> current;
    auto rec = [&](auto&& self, std::size_t pos, int remaining, int ghost) -> void {
        if (remaining == 0) {
            out[ghost].push_back(Monomial::from_factors(current));
            return;
        }
        if (pos == fields.size()) return;
        const Generator& g = reg[fields[pos]];
        bool odd = g.parity == Parity::odd;
        int max_exp = odd ? 1 : remaining / g.weight;
        for (int e = std::min(max_exp, remaining / g.weight); e >= 0; --e) {
            if (e > 0) current.push_back({fields[pos], static_cast<std::uint16_t>(e), odd});
            self(self, pos + 1, remaining - e * g.weight, ghost + e * g.ghost);
            if (e > 0) current.pop_back();
        }
    };
    // Fields are registered in canonical order, so factors come out sorted.
    std::vector<GenIndex> sorted = fields;
    if (!std::is_sorted(sorted.begin(), sorted.end())) throw InvalidSpec("fields not in canonical order");
    rec(rec, 0, weight, 0);
    for (auto& [g, ms] : out) std::sort(ms.begin(), ms.end(), MonomialOrder{});
    return out;
}

inline CochainBasis enumerate_basis(const FieldTable& table, int ghost, int weight) {
    auto all = enumerate_weight(table, weight);
    auto it = all.find(ghost);
    return CochainBasis(ghost, weight, it == all.end() ? std::vector<Monomial>{} : std::move(it->second));
}

inline QMatrix differential_matrix(const Differential& d, const CochainBasis& in, const CochainBasis& out) {
    if (out.ghost() != in.ghost() + 1 || out.weight() != in.weight() + 1)
        throw InhomogeneousDifferential("target block must be (ghost+1, weight+1)");
    QMatrix m(out.size(), in.size());
    for (std::size_t j = 0; j < in.size(); ++j) m.set_column(j, out.coordinates(d.apply(in[j])));
    return m;
}

// Blocks of the complex for a ghost/weight window, with the differential out of each block.
// Blocks exist for ghost in [lo-1, hi+1] and weight in [-1, weight_max+1]; matrices leave
// every block with ghost in [lo-1, hi] and weight in [-1, weight_max].
class ComplexSlice {
public:
    ComplexSlice(FieldTable table, Differential d, int ghost_lo, int ghost_hi, int weight_max)
        : table_(std::move(table)), d_(std::move(d)), lo_(ghost_lo), hi_(ghost_hi), wmax_(weight_max) {
        if (ghost_lo > ghost_hi || weight_max < 0) throw std::invalid_argument("empty slice window");
        for (int w = -1; w <= weight_max + 1; ++w) {
            auto all = enumerate_weight(table_, w);
            for (int g = lo_ - 1; g <= hi_ + 1; ++g) {
                auto it = all.find(g);
                blocks_.emplace(std::make_pair(g, w),
                                CochainBasis(g, w, it == all.end() ? std::vector<Monomial>{} : std::move(it->second)));
            }
        }
        for (int w = -1; w <= weight_max; ++w)
            for (int g = lo_ - 1; g <= hi_; ++g)
                matrices_.emplace(std::make_pair(g, w),
                                  differential_matrix(d_, blocks_.at({g, w}), blocks_.at({g + 1, w + 1})));
    }

    [[nodiscard]] const FieldTable& table() const { return table_; }
    [[nodiscard]] const Differential& differential() const { return d_; }
    [[nodiscard]] int ghost_lo() const { return lo_; }
    [[nodiscard]] int ghost_hi() const { return hi_; }
    [[nodiscard]] int weight_max() const { return wmax_; }

    [[nodiscard]] bool has_block(int g, int w) const { return blocks_.contains({g, w}); }

    [[nodiscard]] const CochainBasis& block(int g, int w) const {
        auto it = blocks_.find({g, w});
        if (it == blocks_.end()) throw MissingBlock(where("block", g, w));
        return it->second;
    }
    [[nodiscard]] const QMatrix& matrix(int g, int w) const {
        auto it = matrices_.find({g, w});
        if (it == matrices_.end()) throw MissingBlock(where("matrix", g, w));
        return it->second;
    }
    [[nodiscard]] bool has_matrix(int g, int w) const { return matrices_.contains({g, w}); }

    [[nodiscard]] std::size_t rank_of(int g, int w) const {
        const QMatrix& m = matrix(g, w);
        std::lock_guard lock(*cache_mutex_);
        auto it = ranks_.find({g, w});
        if (it != ranks_.end()) return it->second;
        std::size_t r = rank(m);
        ranks_.emplace(std::make_pair(g, w), r);
        return r;
    }

private:
    static std::string where(const char* what, int g, int w) {
        return std::string(what) + " (" + std::to_string(g) + ", " + std::to_string(w) + ") outside the slice";
    }

    FieldTable table_;
    Differential d_;
    int lo_;
    int hi_;
    int wmax_;
    std::map<std::pair<int, int>, CochainBasis> blocks_;
    std::map<std::pair<int, int>, QMatrix> matrices_;
    std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
    mutable std::map<std::pair<int, int>, std::size_t> ranks_;
};

// Gauge-fixed extended U(2) theory (psi = 0).
inline ComplexSlice extended_slice(const ModelSpec& spec, int ghost_lo, int ghost_hi, int weight_max) {
    if (!spec.t_poly.is_zero()) throw InvalidSpec("cohomology requires T = 0");
    FieldTable t = u2_field_table();
    Differential d = brst_differential(build_extended_action(spec, t), t);
    return ComplexSlice(std::move(t), std::move(d), ghost_lo, ghost_hi, weight_max);
}

// Total theory with the five auxiliary pairs (psi = 0).
inline ComplexSlice total_slice(const ModelSpec& spec, int ghost_lo, int ghost_hi, int weight_max) {
    if (!spec.t_poly.is_zero()) throw InvalidSpec("cohomology requires T = 0");
    TotalTheory tot = u2_total_theory(spec);
    Differential d = brst_differential(tot.action, tot.table);
    return ComplexSlice(std::move(tot.table), std::move(d), ghost_lo, ghost_hi, weight_max);
}

}  // namespace brstlab
