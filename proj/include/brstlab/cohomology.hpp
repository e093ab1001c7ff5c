#pragma once

#include "brstlab/checks.hpp"
#include "brstlab/cochain.hpp"
#include "brstlab/qmatrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brstlab {

struct CohomologyEntry {
    int ghost = 0;
    int weight = 0;
    std::size_t dim = 0;
    std::size_t ker = 0;
    std::size_t im = 0;
    std::size_t h = 0;
};

struct CohomologyReport {
    std::vector<CohomologyEntry> entries;
    std::map<std::pair<int, int>, std::vector<SuperPoly>> representatives;
};

inline CohomologyEntry cohomology_entry(const ComplexSlice& s, int g, int w) {
    CohomologyEntry e{g, w};
    e.dim = s.block(g, w).size();
    e.ker = e.dim - s.rank_of(g, w);
    e.im = s.rank_of(g - 1, w - 1);
    e.h = e.ker - e.im;
    return e;
}

inline std::size_t cohomology_dim(const ComplexSlice& s, int g, int w) { return cohomology_entry(s, g, w).h; }

// Same number through explicit kernel and image spans.
inline std::size_t cohomology_dim_by_quotient(const ComplexSlice& s, int g, int w) {
    return quotient_dim(kernel_basis(s.matrix(g, w)), columns_of(s.matrix(g - 1, w - 1)));
}

namespace detail {
inline EchelonSpan image_span(const ComplexSlice& s, int g, int w) {
    EchelonSpan span;
    const QMatrix& in = s.matrix(g - 1, w - 1);
    for (std::size_t c = 0; c < in.cols(); ++c) span.insert(in.column(c));
    return span;
}
}  // namespace detail

// Kernel basis vectors that stay independent modulo the image, in kernel-basis order.
inline std::vector<SuperPoly> representatives(const ComplexSlice& s, int g, int w) {
    const CochainBasis& b = s.block(g, w);
    EchelonSpan span = detail::image_span(s, g, w);
    std::vector<SuperPoly> out;
    for (const auto& v : kernel_basis(s.matrix(g, w)))
        if (span.insert(to_sparse(v))) out.push_back(b.polynomial(v));
    return out;
}

inline SuperPoly r_squared(const FieldTable& t) {
    return t.gen("M1").pow(2) + t.gen("M2").pow(2) + t.gen("M3").pow(2);
}

// Sum over i, j<k of eps_ijk M_i C_j C_k.
inline SuperPoly eps_mcc(const FieldTable& t) {
    SuperPoly x;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k)
                if (int e = levi_civita(i, j, k); e != 0)
                    x += t.gen("M" + std::to_string(i + 1)) * t.gen("C" + std::to_string(j + 1)) *
                         t.gen("C" + std::to_string(k + 1)) * Rational(e);
    return x;
}

// Monomials of degree n in M1..M4.
inline std::vector<SuperPoly> m_monomials(const FieldTable& t, int n) {
    std::vector<SuperPoly> out;
    if (n < 0) return out;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            for (int c = 0; a + b + c <= n; ++c) {
                int d = n - a - b - c;
                out.push_back(t.gen("M1").pow(a) * t.gen("M2").pow(b) * t.gen("M3").pow(c) * t.gen("M4").pow(d));
            }
    return out;
}

// (M1^2+M2^2+M3^2)^k M4^(w-2k), 2k <= w.
inline std::vector<SuperPoly> invariant_family(const FieldTable& t, int w) {
    std::vector<SuperPoly> out;
    for (int k = 0; 2 * k <= w; ++k)
        out.push_back(r_squared(t).pow(static_cast<unsigned>(k)) * t.gen("M4").pow(static_cast<unsigned>(w - 2 * k)));
    return out;
}

// Q * eps_mcc for every M-monomial Q of degree w-3, plus M4^(w-1) E.
inline std::vector<SuperPoly> h2_family(const FieldTable& t, int w) {
    std::vector<SuperPoly> out;
    for (const auto& q : m_monomials(t, w - 3)) out.push_back(q * eps_mcc(t));
    if (w >= 1) out.push_back(t.gen("M4").pow(static_cast<unsigned>(w - 1)) * t.gen("E"));
    return out;
}

// M4^(w-q) E^q when w >= q.
inline std::vector<SuperPoly> even_tail_family(const FieldTable& t, int q, int w) {
    if (w < q) return {};
    return {t.gen("M4").pow(static_cast<unsigned>(w - q)) * t.gen("E").pow(static_cast<unsigned>(q))};
}

struct FamilyCheck {
    bool all_cocycles = true;
    std::size_t independent_classes = 0;  // rank of the family modulo coboundaries
    std::size_t dim_h = 0;
    std::string detail;
};

inline FamilyCheck family_check(const ComplexSlice& s, int g, int w, const std::vector<SuperPoly>& family) {
    FamilyCheck out;
    out.dim_h = cohomology_dim(s, g, w);
    const CochainBasis& b = s.block(g, w);
    EchelonSpan span = detail::image_span(s, g, w);
    std::size_t base = span.rank();
    for (const auto& p : family) {
        SuperPoly dp = s.differential().apply(p);
        if (!dp.is_zero()) {
            out.all_cocycles = false;
            out.detail = "d(" + p.render(s.table().registry()) + ") = " + dp.render(s.table().registry());
        }
        span.insert(b.coordinates(p));
    }
    out.independent_classes = span.rank() - base;
    return out;
}

// Candidate families for a block, in the order they are preferred.
inline std::vector<SuperPoly> known_families(const FieldTable& t, int g, int w) {
    if (g == 0) return invariant_family(t, w);
    if (g == 2) return h2_family(t, w);
    if (g >= 4 && g % 2 == 0) return even_tail_family(t, g / 2, w);
    return {};
}

// Representatives drawn from the known families first, completed by echelon representatives.
inline std::vector<SuperPoly> preferred_representatives(const ComplexSlice& s, int g, int w) {
    const CochainBasis& b = s.block(g, w);
    EchelonSpan span = detail::image_span(s, g, w);
    std::vector<SuperPoly> out;
    for (const auto& p : known_families(s.table(), g, w)) {
        if (!s.differential().apply(p).is_zero()) continue;
        if (span.insert(b.coordinates(p))) out.push_back(p);
    }
    for (const auto& v : kernel_basis(s.matrix(g, w)))
        if (span.insert(to_sparse(v))) out.push_back(b.polynomial(v));
    return out;
}

inline CohomologyReport cohomology_report(const ComplexSlice& s, int ghost_lo, int ghost_hi, int weight_max,
                                          bool with_representatives = false) {
    CohomologyReport r;
    for (int g = ghost_lo; g <= ghost_hi; ++g)
        for (int w = 0; w <= weight_max; ++w) {
            r.entries.push_back(cohomology_entry(s, g, w));
            if (with_representatives && r.entries.back().h > 0)
                r.representatives[{g, w}] = preferred_representatives(s, g, w);
        }
    return r;
}

// dim H(2i+1, w) = dim H(3, w-(i-1)) and dim H(2i+2, w) = dim H(4, w-(i-1)) for 1 <= i <= i_max.
inline std::vector<CheckResult> verify_periodicity(const ComplexSlice& s, int i_max, int weight_max) {
    std::vector<CheckResult> out;
    auto h = [&](int g, int w) -> long long { return w < 0 ? 0 : static_cast<long long>(cohomology_dim(s, g, w)); };
    for (int i = 1; i <= i_max; ++i)
        for (int w = 0; w <= weight_max; ++w) {
            std::string at = "i=" + std::to_string(i) + " w=" + std::to_string(w);
            out.push_back(equality_check("H(" + std::to_string(2 * i + 1) + ") vs H(3) " + at, h(2 * i + 1, w),
                                         h(3, w - (i - 1))));
            out.push_back(equality_check("H(" + std::to_string(2 * i + 2) + ") vs H(4) " + at, h(2 * i + 2, w),
                                         h(4, w - (i - 1))));
        }
    return out;
}

inline std::vector<CheckResult> compare_quasi_iso(const ComplexSlice& a, const ComplexSlice& b, int ghost_lo,
                                                  int ghost_hi, int weight_max) {
    std::vector<CheckResult> out;
    for (int g = ghost_lo; g <= ghost_hi; ++g)
        for (int w = 0; w <= weight_max; ++w)
            out.push_back(equality_check("(" + std::to_string(g) + ", " + std::to_string(w) + ")",
                                         static_cast<long long>(cohomology_dim(a, g, w)),
                                         static_cast<long long>(cohomology_dim(b, g, w))));
    return out;
}

// Every block matrix composed with the next one vanishes.
inline std::vector<CheckResult> blockwise_nilpotence(const ComplexSlice& s, int ghost_max, int weight_max) {
    std::vector<CheckResult> out;
    for (int g = s.ghost_lo() - 1; g <= ghost_max; ++g)
        for (int w = 0; w <= weight_max; ++w) {
            QMatrix p = s.matrix(g + 1, w + 1) * s.matrix(g, w);
            out.push_back({"(" + std::to_string(g) + ", " + std::to_string(w) + ")", p.is_zero(),
                           std::to_string(p.nnz()) + " nonzero entries in d*d"});
        }
    return out;
}

}  // namespace brstlab
