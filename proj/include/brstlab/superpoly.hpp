#pragma once

#include "brstlab/errors.hpp"
#include "brstlab/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace brstlab {

using GenIndex = std::uint16_t;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity parity_of_ghost(int ghost) { return (ghost % 2 == 0) ? Parity::even : Parity::odd; }

struct Generator {
    std::string id;
    int ghost = 0;
    Parity parity = Parity::even;
    int weight = 1;
    std::optional<GenIndex> antifield_of;  // set on antifields only
};

// Generators in canonical order; the index is the insertion position.
class GeneratorRegistry {
public:
    GenIndex add(Generator g) {
        if (g.id.empty()) throw InvalidSpec("empty generator id");
        if (index_.contains(g.id)) throw InvalidSpec("duplicate generator " + g.id);
        if (g.parity != parity_of_ghost(g.ghost))
            throw InvalidSpec("parity of " + g.id + " disagrees with its ghost number");
        if (g.antifield_of && *g.antifield_of >= gens_.size())
            throw InvalidSpec("antifield " + g.id + " refers to an unknown field");
        auto i = static_cast<GenIndex>(gens_.size());
        index_.emplace(g.id, i);
        gens_.push_back(std::move(g));
        return i;
    }

    [[nodiscard]] GenIndex index(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) throw UnknownGenerator("unknown generator " + std::string(id));
        return it->second;
    }
    [[nodiscard]] bool contains(std::string_view id) const { return index_.contains(std::string(id)); }
    [[nodiscard]] const Generator& operator[](GenIndex i) const { return gens_.at(i); }
    [[nodiscard]] const Generator& at(std::string_view id) const { return gens_[index(id)]; }
    [[nodiscard]] std::size_t size() const { return gens_.size(); }
    [[nodiscard]] const std::vector<Generator>& generators() const { return gens_; }

private:
    std::vector<Generator> gens_;
    std::unordered_map<std::string, GenIndex> index_;
};

struct Factor {
    GenIndex gen;
    std::uint16_t exp;
    bool odd;
    friend bool operator==(const Factor&, const Factor&) = default;
};

// Product of generators in canonical order; odd generators appear with exponent 1.
class Monomial {
public:
    Monomial() = default;

    static Monomial generator(GenIndex g, Parity p) {
        Monomial m;
        m.f_.push_back({g, 1, p == Parity::odd});
        return m;
    }

    [[nodiscard]] const std::vector<Factor>& factors() const { return f_; }
    [[nodiscard]] bool is_one() const { return f_.empty(); }

    [[nodiscard]] unsigned exponent(GenIndex g) const {
        for (const auto& x : f_)
            if (x.gen == g) return x.exp;
        return 0;
    }
    [[nodiscard]] unsigned degree() const {
        unsigned d = 0;
        for (const auto& x : f_) d += x.exp;
        return d;
    }
    [[nodiscard]] bool is_odd() const {
        return std::count_if(f_.begin(), f_.end(), [](const Factor& x) { return x.odd; }) % 2 == 1;
    }
    [[nodiscard]] int ghost(const GeneratorRegistry& reg) const {
        int g = 0;
        for (const auto& x : f_) g += reg[x.gen].ghost * static_cast<int>(x.exp);
        return g;
    }
    [[nodiscard]] int weight(const GeneratorRegistry& reg) const {
        int w = 0;
        for (const auto& x : f_) w += reg[x.gen].weight * static_cast<int>(x.exp);
        return w;
    }

    // Builds a monomial from factors; throws if unsorted or if an odd factor has exponent > 1.
    static Monomial from_factors(std::vector<Factor> f) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i].exp == 0) throw InvalidSpec("zero exponent in monomial");
            if (f[i].odd && f[i].exp > 1) throw InvalidSpec("odd generator squared");
            if (i > 0 && f[i - 1].gen >= f[i].gen) throw InvalidSpec("monomial factors not sorted");
        }
        Monomial m;
        m.f_ = std::move(f);
        return m;
    }

    // Koszul sign and product; nullopt when an odd generator repeats.
    static std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.f_.reserve(a.f_.size() + b.f_.size());
        int odd_left_in_a = 0;
        for (const auto& x : a.f_) odd_left_in_a += x.odd ? 1 : 0;
        int swaps = 0;
        auto ia = a.f_.begin();
        auto ib = b.f_.begin();
        while (ia != a.f_.end() || ib != b.f_.end()) {
            if (ib == b.f_.end() || (ia != a.f_.end() && ia->gen < ib->gen)) {
                if (ia->odd) --odd_left_in_a;
                out.f_.push_back(*ia++);
            } else if (ia == a.f_.end() || ib->gen < ia->gen) {
                if (ib->odd) swaps += odd_left_in_a;
                out.f_.push_back(*ib++);
            } else {
                if (ia->odd) return std::nullopt;
                out.f_.push_back({ia->gen, static_cast<std::uint16_t>(ia->exp + ib->exp), false});
                ++ia;
                ++ib;
            }
        }
        return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(out));
    }

    // Coefficient and monomial of the derivative with respect to g, taken from the left or right.
    [[nodiscard]] std::optional<std::pair<int, Monomial>> derivative(GenIndex g, bool from_left) const {
        auto it = std::find_if(f_.begin(), f_.end(), [g](const Factor& x) { return x.gen == g; });
        if (it == f_.end()) return std::nullopt;
        Monomial out = *this;
        auto pos = static_cast<std::size_t>(it - f_.begin());
        if (!it->odd) {
            int c = it->exp;
            if (--out.f_[pos].exp == 0) out.f_.erase(out.f_.begin() + static_cast<std::ptrdiff_t>(pos));
            return std::make_pair(c, std::move(out));
        }
        int passed = 0;
        if (from_left) {
            for (auto jt = f_.begin(); jt != it; ++jt) passed += jt->odd ? 1 : 0;
        } else {
            for (auto jt = it + 1; jt != f_.end(); ++jt) passed += jt->odd ? 1 : 0;
        }
        out.f_.erase(out.f_.begin() + static_cast<std::ptrdiff_t>(pos));
        return std::make_pair(passed % 2 == 0 ? 1 : -1, std::move(out));
    }

    // Exponent-vector comparison: positive when a is lex-greater with generator 0 most significant.
    static int lex_compare(const Monomial& a, const Monomial& b) {
        std::size_t n = std::min(a.f_.size(), b.f_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& x = a.f_[i];
            const auto& y = b.f_[i];
            if (x.gen != y.gen) return x.gen < y.gen ? 1 : -1;
            if (x.exp != y.exp) return x.exp > y.exp ? 1 : -1;
        }
        if (a.f_.size() != b.f_.size()) return a.f_.size() > b.f_.size() ? 1 : -1;
        return 0;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> f_;
};

// Graded-lex order, highest first: larger total degree, then lex-greater exponent vector.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.degree();
        unsigned db = b.degree();
        if (da != db) return da > db;
        return Monomial::lex_compare(a, b) > 0;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto& f : m.factors()) h = (h ^ (static_cast<std::size_t>(f.gen) << 16 | f.exp)) * 1099511628211ULL;
        return h;
    }
};

// Element of the free graded-commutative algebra over Q on a generator registry.
class SuperPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    SuperPoly() = default;
    SuperPoly(Rational c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) t_.emplace(Monomial(), std::move(c));
    }
    SuperPoly(int c) : SuperPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    static SuperPoly term(Rational c, Monomial m) {
        SuperPoly p;
        if (!c.is_zero()) p.t_.emplace(std::move(m), std::move(c));
        return p;
    }
    static SuperPoly generator(GenIndex g, Parity p) { return term(Rational(1), Monomial::generator(g, p)); }
    static SuperPoly generator(const GeneratorRegistry& reg, std::string_view id) {
        GenIndex g = reg.index(id);
        return generator(g, reg[g].parity);
    }

    [[nodiscard]] const Terms& terms() const { return t_; }
    [[nodiscard]] bool is_zero() const { return t_.empty(); }
    [[nodiscard]] std::size_t size() const { return t_.size(); }
    [[nodiscard]] Rational coefficient(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rational() : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    SuperPoly& operator+=(const SuperPoly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    SuperPoly& operator-=(const SuperPoly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    SuperPoly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& [m, c] : t_) c *= s;
        return *this;
    }
    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator-(SuperPoly a) { return a *= Rational(-1); }
    friend SuperPoly operator*(SuperPoly a, const Rational& s) { return a *= s; }
    friend SuperPoly operator*(const Rational& s, SuperPoly a) { return a *= s; }
    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
        SuperPoly out;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                auto prod = Monomial::multiply(ma, mb);
                if (!prod) continue;
                Rational c = ca * cb;
                if (prod->first < 0) c = -c;
                out.add_term(prod->second, c);
            }
        return out;
    }
    SuperPoly& operator*=(const SuperPoly& o) { return *this = *this * o; }
    friend bool operator==(const SuperPoly&, const SuperPoly&) = default;

    [[nodiscard]] SuperPoly pow(unsigned n) const {
        SuperPoly out(1);
        for (unsigned i = 0; i < n; ++i) out *= *this;
        return out;
    }

    [[nodiscard]] SuperPoly partial_left(GenIndex g) const { return derivative(g, true); }
    [[nodiscard]] SuperPoly partial_right(GenIndex g) const { return derivative(g, false); }

    // Split into (ghost, weight) bihomogeneous parts.
    [[nodiscard]] std::map<std::pair<int, int>, SuperPoly> bigrade_components(const GeneratorRegistry& reg) const {
        std::map<std::pair<int, int>, SuperPoly> out;
        for (const auto& [m, c] : t_) out[{m.ghost(reg), m.weight(reg)}].add_term(m, c);
        return out;
    }

    [[nodiscard]] bool uses_generator(GenIndex g) const {
        return std::any_of(t_.begin(), t_.end(), [g](const auto& t) { return t.first.exponent(g) > 0; });
    }

    // Replace generators by polynomials of the same parity; unmapped generators stay.
    [[nodiscard]] SuperPoly substitute(const std::map<GenIndex, SuperPoly>& rules) const {
        SuperPoly out;
        for (const auto& [m, c] : t_) {
            SuperPoly acc(c);
            for (const auto& f : m.factors()) {
                auto it = rules.find(f.gen);
                SuperPoly x = it != rules.end()
                                  ? it->second
                                  : generator(f.gen, f.odd ? Parity::odd : Parity::even);
                acc *= x.pow(f.exp);
                if (acc.is_zero()) break;
            }
            out += acc;
        }
        return out;
    }

    [[nodiscard]] std::string render(const GeneratorRegistry& reg) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : t_) {
            if (first) {
                os << c.str();
            } else {
                os << (c.sign() < 0 ? " - " : " + ") << c.abs().str();
            }
            first = false;
            for (const auto& f : m.factors()) {
                os << '*' << reg[f.gen].id;
                if (f.exp > 1) os << '^' << f.exp;
            }
        }
        return os.str();
    }

private:
    [[nodiscard]] SuperPoly derivative(GenIndex g, bool from_left) const {
        SuperPoly out;
        for (const auto& [m, c] : t_) {
            auto d = m.derivative(g, from_left);
            if (!d) continue;
            out.add_term(d->second, c * Rational(d->first));
        }
        return out;
    }

    Terms t_;
};

}  // namespace brstlab
