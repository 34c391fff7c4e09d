#include "achow/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "achow/errors.hpp"

namespace achow {

std::string rat_to_string(const Rational& r) {
    return r.get_str();
}

Rational rat_pow(const Rational& r, unsigned e) {
    Rational out;
    mpz_pow_ui(out.get_num().get_mpz_t(), r.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), r.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

bool rat_is_square(const Rational& r) {
    if (sgn(r) < 0) return false;
    return mpz_perfect_square_p(r.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(r.get_den().get_mpz_t());
}

Rational rat_sqrt(const Rational& r) {
    Rational out;
    mpz_sqrt(out.get_num().get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(out.get_den().get_mpz_t(), r.get_den().get_mpz_t());
    out.canonicalize();
    return out;
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    // Lex with earlier symbols weighing more: a is smaller when the first
    // differing exponent is smaller.
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly::Poly(TablePtr table, const Rational& c) : table_(std::move(table)) {
    if (c != 0) terms_.emplace(Exponents(table_->size(), 0), c);
}

Poly Poly::variable(const TablePtr& table, Symbol s) {
    Poly p(table);
    Exponents e(table->size(), 0);
    e[s.idx] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Poly Poly::monomial(const TablePtr& table, Exponents e, const Rational& c) {
    Poly p(table);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

std::optional<Rational> Poly::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) return std::nullopt;
    return terms_.begin()->second;
}

bool Poly::involves(Symbol s) const {
    for (const auto& [e, c] : terms_)
        if (e[s.idx] > 0) return true;
    return false;
}

std::vector<Symbol> Poly::symbols() const {
    std::vector<Symbol> out;
    if (!table_) return out;
    for (uint32_t i = 0; i < table_->size(); ++i)
        if (involves(Symbol{i})) out.push_back(Symbol{i});
    return out;
}

int Poly::degree(Symbol s) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[s.idx]));
    return d;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0L)));
    return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!table_) table_ = o.table_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!table_) table_ = o.table_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r(table_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(table_ ? table_ : o.table_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e = e1;
            for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(table_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(table_, Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Poly Poly::derivative(Symbol s) const {
    Poly r(table_);
    for (const auto& [e, c] : terms_) {
        if (e[s.idx] == 0) continue;
        Exponents ne = e;
        ne[s.idx] -= 1;
        r.add_term(ne, c * Rational(static_cast<long>(e[s.idx])));
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(Symbol s) const {
    int d = degree(s);
    std::vector<Poly> out(static_cast<size_t>(std::max(d + 1, 0)), Poly(table_));
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        uint32_t k = ne[s.idx];
        ne[s.idx] = 0;
        out[k].add_term(ne, c);
    }
    return out;
}

Poly Poly::from_coeffs_in(const TablePtr& table, Symbol s, const std::vector<Poly>& cs) {
    Poly r(table);
    Poly sv = Poly::variable(table, s);
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        r += cs[k] * sv.pow(static_cast<unsigned>(k));
    }
    return r;
}

Poly Poly::leading_coeff_in(Symbol s) const {
    int d = degree(s);
    if (d < 0) return Poly(table_);
    Poly r(table_);
    for (const auto& [e, c] : terms_) {
        if (static_cast<int>(e[s.idx]) != d) continue;
        Exponents ne = e;
        ne[s.idx] = 0;
        r.add_term(ne, c);
    }
    return r;
}

Rational Poly::content_signed() const {
    if (terms_.empty()) return Rational(0);
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(g, l);
    content.canonicalize();
    // Leading term in graded-lex order is the last map entry.
    if (sgn(terms_.rbegin()->second) < 0) content = -content;
    return content;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    Rational c = content_signed();
    Poly r(table_);
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k / c);
    return r;
}

Poly Poly::divexact(const Poly& d) const {
    if (d.is_zero()) throw MathError("divexact: division by zero polynomial");
    Poly q(table_);
    Poly r = *this;
    const auto& [ed, cd] = *d.terms_.rbegin();
    while (!r.is_zero()) {
        const auto& [er, cr] = *r.terms_.rbegin();
        Exponents e(er.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (er[i] < ed[i]) throw MathError("divexact: not divisible");
            e[i] = er[i] - ed[i];
        }
        Rational c = cr / cd;
        Poly t = Poly::monomial(table_, e, c);
        q += t;
        r -= t * d;
    }
    return q;
}

namespace {

// Pseudo-remainder of a by b with respect to s (deg_s a >= deg_s b >= 0).
Poly prem(const Poly& a, const Poly& b, Symbol s) {
    Poly r = a;
    Poly lb = b.leading_coeff_in(s);
    int db = b.degree(s);
    while (!r.is_zero() && r.degree(s) >= db) {
        Poly lr = r.leading_coeff_in(s);
        int k = r.degree(s) - db;
        Poly shift = Poly::variable(r.table(), s).pow(static_cast<unsigned>(k));
        r = r * lb - b * lr * shift;
    }
    return r;
}

Poly content_wrt(const Poly& p, Symbol s) {
    auto cs = p.coeffs_in(s);
    Poly g(p.table());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive() : Poly::gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? Poly(p.table(), Rational(1)) : g;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive();
    if (b.is_zero()) return a.primitive();
    Poly A = a.primitive();
    Poly B = b.primitive();
    if (A.is_constant() || B.is_constant()) return Poly(A.table(), Rational(1));

    // Main variable: the highest symbol occurring in both.
    std::optional<Symbol> main;
    for (uint32_t i = A.table()->size(); i-- > 0;) {
        Symbol s{i};
        if (A.involves(s) && B.involves(s)) {
            main = s;
            break;
        }
    }
    if (!main) return Poly(A.table(), Rational(1));

    Poly ca = content_wrt(A, *main);
    Poly cb = content_wrt(B, *main);
    Poly ppA = A.divexact(ca);
    Poly ppB = B.divexact(cb);
    Poly cg = gcd(ca, cb);

    // Primitive polynomial remainder sequence.
    Poly r0 = ppA, r1 = ppB;
    if (r0.degree(*main) < r1.degree(*main)) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree(*main) > 0) {
        Poly r2 = prem(r0, r1, *main);
        if (!r2.is_zero()) {
            r2 = r2.divexact(content_wrt(r2, *main)).primitive();
        }
        r0 = r1;
        r1 = r2;
    }
    Poly g = r1.is_zero() ? r0 : Poly(A.table(), Rational(1));
    return (cg * g.primitive()).primitive();
}

std::optional<Poly> Poly::sqrt(const Poly& p) {
    if (p.is_zero()) return p;
    Rational content = p.content_signed();
    if (!rat_is_square(content)) return std::nullopt;
    Poly prim = p.primitive();
    if (prim.is_constant()) return Poly(p.table(), rat_sqrt(content));

    Symbol v = prim.symbols().front();
    auto factors = squarefree_decompose(prim, v);
    Poly root(p.table(), rat_sqrt(content));
    Poly rebuilt(p.table(), Rational(1));
    for (const auto& [f, e] : factors) {
        if (e % 2 != 0) return std::nullopt;
        root = root * f.pow(static_cast<unsigned>(e / 2));
        rebuilt = rebuilt * f.pow(static_cast<unsigned>(e));
    }
    // The part of prim not involving v (the content w.r.t. v) must itself be
    // a square; recurse on it.
    Poly rest = prim.divexact(rebuilt);
    if (!rest.is_constant()) {
        auto r = sqrt(rest);
        if (!r) return std::nullopt;
        root = root * *r;
    } else {
        auto c = rest.as_constant();
        if (!rat_is_square(*c)) return std::nullopt;
        root = root * Poly(p.table(), rat_sqrt(*c));
    }
    if (!(root * root == p)) {
        if (root * root == -p) return std::nullopt;
        return std::nullopt;
    }
    return root;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || it->second != jt->second) return false;
    }
    return true;
}

int Poly::compare(const Poly& o) const {
    auto it = terms_.rbegin();
    auto jt = o.terms_.rbegin();
    GradedLexLess less;
    for (; it != terms_.rend() && jt != o.terms_.rend(); ++it, ++jt) {
        if (it->first != jt->first) return less(it->first, jt->first) ? -1 : 1;
        int c = cmp(it->second, jt->second);
        if (c != 0) return c;
    }
    if (it != terms_.rend()) return 1;
    if (jt != o.terms_.rend()) return -1;
    return 0;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool any_sym = std::any_of(e.begin(), e.end(), [](uint32_t x) { return x > 0; });
        bool wrote = false;
        if (a != 1 || !any_sym) {
            os << rat_to_string(a);
            wrote = true;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << table_->name(Symbol{static_cast<uint32_t>(i)});
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

}  // namespace achow
