#pragma once

#include "brstlab/errors.hpp"
#include "brstlab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace brstlab {

using QVector = std::vector<Rational>;

// Sorted (index, value) pairs with no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

inline SparseVector to_sparse(const QVector& v) {
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

inline QVector to_dense(const SparseVector& v, std::size_t dim) {
    QVector out(dim);
    for (const auto& [i, x] : v) out.at(i) = x;
    return out;
}

// a + s*b on sparse vectors.
inline SparseVector axpy(const SparseVector& a, const Rational& s, const SparseVector& b) {
    SparseVector out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.emplace_back(ib->first, s * ib->second);
            ++ib;
        } else {
            Rational x = ia->second + s * ib->second;
            if (!x.is_zero()) out.emplace_back(ia->first, std::move(x));
            ++ia;
            ++ib;
        }
    }
    return out;
}

// Sparse matrix over Q, stored by columns.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), data_(cols) {}

    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols) {
        QMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t c = 0; c < cols; ++c)
                if (!rows[r][c].is_zero()) m.data_[c].emplace_back(r, rows[r][c]);
        }
        return m;
    }
    static QMatrix from_rows(const std::vector<QVector>& rows) {
        return from_rows(rows, rows.empty() ? 0 : rows.front().size());
    }
    static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows) {
        QMatrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != rows) throw std::invalid_argument("ragged matrix columns");
            m.data_[c] = to_sparse(cols[c]);
        }
        return m;
    }
    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return data_.size(); }

    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const {
        check(r, c);
        const auto& col = data_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const auto& e, std::size_t i) { return e.first < i; });
        return (it != col.end() && it->first == r) ? it->second : Rational();
    }

    void set(std::size_t r, std::size_t c, Rational v) {
        check(r, c);
        auto& col = data_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const auto& e, std::size_t i) { return e.first < i; });
        bool present = it != col.end() && it->first == r;
        if (v.is_zero()) {
            if (present) col.erase(it);
        } else if (present) {
            it->second = std::move(v);
        } else {
            col.insert(it, {r, std::move(v)});
        }
    }

    void add(std::size_t r, std::size_t c, const Rational& v) { set(r, c, at(r, c) + v); }

    [[nodiscard]] const SparseVector& column(std::size_t c) const { return data_.at(c); }

    void set_column(std::size_t c, SparseVector v) {
        for (const auto& e : v)
            if (e.first >= rows_ || e.second.is_zero()) throw std::out_of_range("bad sparse column");
        data_.at(c) = std::move(v);
    }

    [[nodiscard]] std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : data_) n += c.size();
        return n;
    }
    [[nodiscard]] bool is_zero() const { return nnz() == 0; }

    [[nodiscard]] QMatrix transpose() const {
        QMatrix t(cols(), rows_);
        for (std::size_t c = 0; c < cols(); ++c)
            for (const auto& [r, v] : data_[c]) t.data_[r].emplace_back(c, v);
        return t;
    }

    [[nodiscard]] std::vector<QVector> dense_rows() const {
        std::vector<QVector> out(rows_, QVector(cols()));
        for (std::size_t c = 0; c < cols(); ++c)
            for (const auto& [r, v] : data_[c]) out[r][c] = v;
        return out;
    }

    [[nodiscard]] QVector apply(const QVector& x) const {
        if (x.size() != cols()) throw std::invalid_argument("dimension mismatch in apply");
        QVector y(rows_);
        for (std::size_t c = 0; c < cols(); ++c) {
            if (x[c].is_zero()) continue;
            for (const auto& [r, v] : data_[c]) y[r] += v * x[c];
        }
        return y;
    }

    [[nodiscard]] QMatrix scaled(const Rational& s) const {
        if (s.is_zero()) return QMatrix(rows_, cols());
        QMatrix m = *this;
        for (auto& col : m.data_)
            for (auto& e : col) e.second *= s;
        return m;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
        QMatrix out(a.rows(), b.cols());
        for (std::size_t c = 0; c < b.cols(); ++c) {
            SparseVector acc;
            for (const auto& [k, v] : b.data_[c]) acc = axpy(acc, v, a.data_[k]);
            out.data_[c] = std::move(acc);
        }
        return out;
    }
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) { return combine(a, Rational(1), b); }
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b) { return combine(a, Rational(-1), b); }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.data_ == b.data_;
    }

    // [a | b]
    [[nodiscard]] static QMatrix hstack(const QMatrix& a, const QMatrix& b) {
        if (a.rows() != b.rows()) throw std::invalid_argument("row mismatch in hstack");
        QMatrix out = a;
        out.data_.insert(out.data_.end(), b.data_.begin(), b.data_.end());
        return out;
    }
    // [a ; b]
    [[nodiscard]] static QMatrix vstack(const QMatrix& a, const QMatrix& b) {
        if (a.cols() != b.cols()) throw std::invalid_argument("column mismatch in vstack");
        QMatrix out(a.rows() + b.rows(), a.cols());
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out.data_[c] = a.data_[c];
            for (const auto& [r, v] : b.data_[c]) out.data_[c].emplace_back(r + a.rows(), v);
        }
        return out;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols()) throw std::out_of_range("matrix index out of range");
    }
    static QMatrix combine(const QMatrix& a, const Rational& s, const QMatrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("dimension mismatch in sum");
        QMatrix out(a.rows(), a.cols());
        for (std::size_t c = 0; c < a.cols(); ++c) out.data_[c] = axpy(a.data_[c], s, b.data_[c]);
        return out;
    }

    std::size_t rows_ = 0;
    std::vector<SparseVector> data_;
};

// Incrementally built echelon basis of a subspace of Q^n. Vectors are cleared of
// denominators and reduced fraction-free against pivots keyed by leading index;
// each stored row is kept primitive (content 1).
class EchelonSpan {
public:
    // Returns true when v is independent of everything inserted before.
    bool insert(const SparseVector& v) {
        IntRow row = reduce(to_integer(v));
        if (row.empty()) return false;
        lead_.emplace(row.front().first, rows_.size());
        rows_.push_back(std::move(row));
        return true;
    }
    [[nodiscard]] bool contains(const SparseVector& v) const { return reduce(to_integer(v)).empty(); }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }

private:
    using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

    static IntRow to_integer(const SparseVector& v) {
        mpz_class l = 1;
        for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.raw().get_den_mpz_t());
        IntRow row;
        row.reserve(v.size());
        for (const auto& [i, x] : v) row.emplace_back(i, mpz_class(x.raw().get_num() * (l / x.raw().get_den())));
        make_primitive(row);
        return row;
    }

    static void make_primitive(IntRow& row) {
        if (row.empty()) return;
        mpz_class g = 0;
        for (const auto& e : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
            if (g == 1) break;
        }
        if (row.front().second < 0) g = -g;
        if (g != 1)
            for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }

    // (a/g)*v - (b/g)*p where a, b are the leading coefficients of p and v.
    static IntRow eliminate(const IntRow& v, const IntRow& p) {
        mpz_class a = p.front().second;
        mpz_class b = v.front().second;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= g;
        b /= g;
        IntRow out;
        out.reserve(v.size() + p.size());
        auto iv = v.begin() + 1;
        auto ip = p.begin() + 1;
        mpz_class t;
        while (iv != v.end() || ip != p.end()) {
            if (ip == p.end() || (iv != v.end() && iv->first < ip->first)) {
                out.emplace_back(iv->first, mpz_class(a * iv->second));
                ++iv;
            } else if (iv == v.end() || ip->first < iv->first) {
                out.emplace_back(ip->first, mpz_class(-b * ip->second));
                ++ip;
            } else {
                t = a * iv->second - b * ip->second;
                if (t != 0) out.emplace_back(iv->first, t);
                ++iv;
                ++ip;
            }
        }
        make_primitive(out);
        return out;
    }

    [[nodiscard]] IntRow reduce(IntRow v) const {
        while (!v.empty()) {
            auto it = lead_.find(v.front().first);
            if (it == lead_.end()) break;
            v = eliminate(v, rows_[it->second]);
        }
        return v;
    }

    std::vector<IntRow> rows_;
    std::unordered_map<std::size_t, std::size_t> lead_;
};

inline std::size_t rank(const QMatrix& m) {
    // Reduce along the shorter side, sparsest vectors first.
    const QMatrix t = m.cols() <= m.rows() ? m : m.transpose();
    std::vector<std::size_t> order(t.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t.column(a).size() < t.column(b).size(); });
    EchelonSpan span;
    for (std::size_t c : order) span.insert(t.column(c));
    return span.rank();
}

// Row-reduced echelon form of a dense row list; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> rref_in_place(std::vector<SparseVector>& rows) {
    std::vector<std::size_t> pivots;
    std::size_t done = 0;
    std::size_t max_col = 0;
    for (const auto& r : rows)
        if (!r.empty()) max_col = std::max(max_col, r.back().first + 1);
    for (std::size_t c = 0; c < max_col && done < rows.size(); ++c) {
        // Pivot: the shortest candidate row, then the smallest-magnitude entry.
        std::size_t best = rows.size();
        for (std::size_t r = done; r < rows.size(); ++r) {
            if (rows[r].empty() || rows[r].front().first != c) continue;
            if (best == rows.size() || rows[r].size() < rows[best].size() ||
                (rows[r].size() == rows[best].size() &&
                 rows[r].front().second.abs() < rows[best].front().second.abs()))
                best = r;
        }
        if (best == rows.size()) continue;
        std::swap(rows[done], rows[best]);
        Rational inv = rows[done].front().second.inverse();
        for (auto& e : rows[done]) e.second *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == done) continue;
            auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                                       [](const auto& e, std::size_t i) { return e.first < i; });
            if (it == rows[r].end() || it->first != c) continue;
            Rational f = -it->second;
            rows[r] = axpy(rows[r], f, rows[done]);
        }
        // Keep unprocessed rows sorted by leading column so the scan above stays local.
        std::stable_sort(rows.begin() + static_cast<std::ptrdiff_t>(done) + 1, rows.end(),
                         [](const SparseVector& a, const SparseVector& b) {
                             if (a.empty() || b.empty()) return !a.empty() && b.empty();
                             return a.front().first < b.front().first;
                         });
        pivots.push_back(c);
        ++done;
    }
    rows.resize(done);
    return pivots;
}

// Null-space basis in reduced column echelon form: one vector per free column, in
// increasing order of that column, with a 1 in the free slot and 0 in the other free slots.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
    std::vector<SparseVector> rows(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) rows[r].emplace_back(c, v);
    std::vector<std::size_t> pivots = rref_in_place(rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_index(m.cols(), 0);
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) {
            free_index[c] = free_cols.size();
            free_cols.push_back(c);
        }
    std::vector<QVector> basis(free_cols.size(), QVector(m.cols()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) basis[k][free_cols[k]] = Rational(1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r])
            if (!is_pivot[c]) basis[free_index[c]][pivots[r]] = -v;
    return basis;
}

inline std::size_t span_rank(const std::vector<QVector>& vectors) {
    EchelonSpan span;
    for (const auto& v : vectors) span.insert(to_sparse(v));
    return span.rank();
}

// dim span(a) ∩ span(b)
inline std::size_t intersection_dim(const std::vector<QVector>& a, const std::vector<QVector>& b) {
    std::vector<QVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return span_rank(a) + span_rank(b) - span_rank(both);
}

// dim span(kernel) / span(image); throws ImageNotInKernel if some image vector escapes.
inline std::size_t quotient_dim(const std::vector<QVector>& kernel, const std::vector<QVector>& image) {
    EchelonSpan ker;
    for (const auto& v : kernel) ker.insert(to_sparse(v));
    for (std::size_t i = 0; i < image.size(); ++i)
        if (!ker.contains(to_sparse(image[i])))
            throw ImageNotInKernel("image vector " + std::to_string(i) + " is not in the kernel span");
    return ker.rank() - span_rank(image);
}

inline std::vector<QVector> columns_of(const QMatrix& m) {
    std::vector<QVector> out;
    out.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(to_dense(m.column(c), m.rows()));
    return out;
}

inline QMatrix matrix_from_columns(const std::vector<QVector>& cols, std::size_t rows) {
    return QMatrix::from_columns(cols, rows);
}

}  // namespace brstlab
