#include "achow/field_poly.hpp"

#include <algorithm>
#include <sstream>

#include "achow/errors.hpp"

namespace achow {

FieldPoly::FieldPoly(TablePtr table, Symbol var, std::vector<RatFunc> coeffs)
    : table_(std::move(table)), var_(var), c_(std::move(coeffs)) {
    for (const auto& c : c_) {
        if (c.involves(var_)) throw MathError("FieldPoly coefficient involves the main variable");
    }
    trim();
}

FieldPoly FieldPoly::constant(const TablePtr& table, Symbol var, const RatFunc& c) {
    FieldPoly f(table, var);
    if (!c.is_zero()) f.c_.push_back(c);
    return f;
}

FieldPoly FieldPoly::variable(const TablePtr& table, Symbol var) {
    FieldPoly f(table, var);
    f.c_ = {RatFunc::constant(table, Rational(0)), RatFunc::constant(table, Rational(1))};
    return f;
}

FieldPoly FieldPoly::from_poly(const Poly& p, Symbol var) {
    FieldPoly f(p.table(), var);
    for (const auto& c : p.coeffs_in(var)) f.c_.push_back(RatFunc::from_poly(c));
    f.trim();
    return f;
}

FieldPoly FieldPoly::numerator(const RatFunc& f, Symbol var) {
    if (f.den().involves(var)) {
        return from_poly(f.num(), var);
    }
    // Denominator is a unit of the coefficient field; keep it for exactness.
    FieldPoly n = from_poly(f.num(), var);
    return n * RatFunc::from_poly(f.den()).inverse();
}

void FieldPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatFunc FieldPoly::coeff(size_t k) const {
    if (k >= c_.size()) return RatFunc::constant(table_, Rational(0));
    return c_[k];
}

const RatFunc& FieldPoly::lc() const {
    if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
    return c_.back();
}

bool FieldPoly::is_monic() const {
    return !c_.empty() && c_.back().is_one();
}

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
    FieldPoly r(table_ ? table_ : o.table_, table_ ? var_ : o.var_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), RatFunc::constant(r.table_, Rational(0)));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        RatFunc v = RatFunc::constant(r.table_, Rational(0));
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v + o.c_[i];
        r.c_[i] = v;
    }
    r.trim();
    return r;
}

FieldPoly FieldPoly::operator-(const FieldPoly& o) const { return *this + (-o); }

FieldPoly FieldPoly::operator-() const {
    FieldPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
    FieldPoly r(table_ ? table_ : o.table_, table_ ? var_ : o.var_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, RatFunc::constant(r.table_, Rational(0)));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

FieldPoly FieldPoly::operator*(const RatFunc& s) const {
    FieldPoly r(table_, var_);
    if (s.is_zero()) return r;
    r.c_ = c_;
    for (auto& c : r.c_) c = c * s;
    return r;
}

FieldPoly FieldPoly::pow(unsigned e) const {
    FieldPoly r = constant(table_, var_, RatFunc::constant(table_, Rational(1)));
    FieldPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FieldPoly FieldPoly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inverse();
}

FieldPoly FieldPoly::derivative() const {
    FieldPoly r(table_, var_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * RatFunc::constant(table_, Rational(static_cast<long>(i))));
    r.trim();
    return r;
}

std::pair<FieldPoly, FieldPoly> FieldPoly::divrem(const FieldPoly& d) const {
    if (d.is_zero()) throw MathError("division by zero polynomial");
    FieldPoly q(table_, var_), r = *this;
    RatFunc dinv = d.lc().inverse();
    while (!r.is_zero() && r.deg() >= d.deg()) {
        int k = r.deg() - d.deg();
        RatFunc c = r.lc() * dinv;
        // q += c * var^k; r -= c * var^k * d
        if (static_cast<int>(q.c_.size()) <= k)
            q.c_.resize(k + 1, RatFunc::constant(table_, Rational(0)));
        q.c_[k] = q.c_[k] + c;
        for (size_t i = 0; i < d.c_.size(); ++i) {
            r.c_[i + k] = r.c_[i + k] - c * d.c_[i];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

FieldPoly FieldPoly::gcd(const FieldPoly& a, const FieldPoly& b) {
    FieldPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        FieldPoly r2 = r0.divrem(r1).second;
        r0 = r1;
        r1 = r2;
    }
    return r0.is_zero() ? r0 : r0.monic();
}

std::tuple<FieldPoly, FieldPoly, FieldPoly> FieldPoly::ext_gcd(const FieldPoly& a,
                                                               const FieldPoly& b) {
    const TablePtr& table = a.table() ? a.table() : b.table();
    Symbol var = a.table() ? a.var() : b.var();
    RatFunc zero = RatFunc::constant(table, Rational(0));
    RatFunc one = RatFunc::constant(table, Rational(1));
    FieldPoly r0 = a, r1 = b;
    FieldPoly s0 = constant(table, var, one), s1 = FieldPoly(table, var);
    FieldPoly t0 = FieldPoly(table, var), t1 = constant(table, var, one);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divrem(r1);
        FieldPoly s2 = s0 - q * s1;
        FieldPoly t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    RatFunc inv = r0.lc().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

bool FieldPoly::is_squarefree() const {
    if (deg() <= 1) return true;
    return gcd(*this, derivative()).deg() == 0;
}

RatFunc FieldPoly::eval(const RatFunc& x) const {
    RatFunc acc = RatFunc::constant(table_, Rational(0));
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::vector<RatFunc> FieldPoly::taylor_at(const RatFunc& c) const {
    // Repeated synthetic division by (var - c); remainders are the shifted
    // coefficients, exactly.
    std::vector<RatFunc> work = c_;
    std::vector<RatFunc> out;
    size_t n = work.size();
    if (n == 0) return out;
    for (size_t k = 0; k < n; ++k) {
        // Divide work (degree n-1-k) by (var - c): Horner.
        RatFunc carry = RatFunc::constant(table_, Rational(0));
        for (size_t i = work.size(); i-- > 0;) {
            RatFunc v = work[i] + carry * c;
            carry = v;
            work[i] = v;
        }
        out.push_back(work[0]);
        work.erase(work.begin());
    }
    return out;
}

Poly FieldPoly::to_poly_primitive() const {
    Poly acc(table_);
    Poly den_lcm(table_, Rational(1));
    for (const auto& c : c_) {
        Poly g = Poly::gcd(den_lcm, c.den());
        den_lcm = den_lcm * c.den().divexact(g.is_constant() ? Poly(table_, Rational(1)) : g);
    }
    Poly v = Poly::variable(table_, var_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        Poly scaled = c_[i].num() * den_lcm.divexact(c_[i].den());
        acc += scaled * v.pow(static_cast<unsigned>(i));
    }
    return acc.is_zero() ? acc : acc.primitive();
}

RatFunc FieldPoly::to_ratfunc() const {
    RatFunc acc = RatFunc::constant(table_, Rational(0));
    RatFunc v = RatFunc::variable(table_, var_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
}

bool FieldPoly::operator==(const FieldPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

int FieldPoly::compare(const FieldPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
    for (size_t i = c_.size(); i-- > 0;) {
        int c = c_[i].compare(o.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string FieldPoly::to_string() const {
    return to_ratfunc().to_string();
}

std::vector<std::pair<FieldPoly, int>> yun_decompose(const FieldPoly& f) {
    std::vector<std::pair<FieldPoly, int>> out;
    if (f.deg() <= 0) return out;
    FieldPoly a = f.monic();
    FieldPoly d = a.derivative();
    FieldPoly g = FieldPoly::gcd(a, d);
    if (g.deg() == 0) {
        out.emplace_back(a, 1);
        return out;
    }
    FieldPoly w = a.divrem(g).first;
    FieldPoly y = d.divrem(g).first;
    FieldPoly z = y - w.derivative();
    int i = 1;
    while (w.deg() > 0) {
        FieldPoly gi = FieldPoly::gcd(w, z);
        if (gi.deg() > 0) out.emplace_back(gi.monic(), i);
        w = w.divrem(gi).first;
        y = z.divrem(gi).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace {

// Rational roots of a primitive integer polynomial, using divisor search on
// the constant and leading coefficients. Squarefree input, so each root is
// simple. Divisor enumeration is capped; missing a root is sound (the factor
// simply stays unsplit).
std::vector<Rational> rational_roots(const FieldPoly& f) {
    std::vector<Rational> roots;
    std::vector<Rational> cs;
    for (const auto& c : f.coeffs()) {
        auto r = c.as_rational();
        if (!r) return roots;
        cs.push_back(*r);
    }
    // Clear denominators.
    mpz_class lcm = 1;
    for (const auto& c : cs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : cs) ic.push_back(mpz_class(c * lcm));
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    mpz_class a0 = ic[low];
    mpz_class an = ic.back();
    auto divisors = [](mpz_class n) {
        std::vector<mpz_class> out;
        n = abs(n);
        if (n == 0) return out;
        const long cap = 200000;
        for (mpz_class d = 1; d * d <= n && d <= cap; ++d) {
            if (n % d == 0) {
                out.push_back(d);
                out.push_back(n / d);
            }
        }
        return out;
    };
    auto eval_at = [&](const Rational& x) {
        Rational acc = 0;
        for (size_t i = ic.size(); i-- > 0;) acc = acc * x + Rational(ic[i]);
        return acc;
    };
    for (const auto& p : divisors(a0)) {
        for (const auto& q : divisors(an)) {
            for (int s : {1, -1}) {
                Rational cand(s * p, q);
                cand.canonicalize();
                if (eval_at(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    return roots;
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p, Symbol main) {
    if (p.is_zero()) throw MathError("squarefree decomposition of zero");
    std::vector<std::pair<Poly, int>> out;
    if (!p.involves(main)) return out;
    for (const auto& [f, m] : yun_decompose(FieldPoly::from_poly(p, main)))
        out.emplace_back(f.to_poly_primitive(), m);
    return out;
}

LinearSplit extract_field_roots(const FieldPoly& squarefree) {
    LinearSplit out;
    const TablePtr& table = squarefree.table();
    FieldPoly f = squarefree.monic();
    out.remaining = f;
    if (f.deg() <= 0) return out;

    if (f.deg() == 1) {
        out.roots.push_back(-f.coeff(0));
        out.remaining = FieldPoly::constant(table, f.var(), RatFunc::constant(table, Rational(1)));
        return out;
    }

    bool pure_rational = true;
    for (const auto& c : f.coeffs())
        if (!c.as_rational()) pure_rational = false;

    if (pure_rational) {
        auto roots = rational_roots(f);
        FieldPoly rem = f;
        for (const auto& r : roots) {
            RatFunc rv = RatFunc::constant(table, r);
            FieldPoly lin(table, f.var(),
                          {-rv, RatFunc::constant(table, Rational(1))});
            rem = rem.divrem(lin).first;
            out.roots.push_back(rv);
        }
        out.remaining = rem.monic();
        // A leftover quadratic may still split over the parameters; fall through.
        if (out.remaining.deg() != 2) return out;
        f = out.remaining;
    }

    if (f.deg() == 2) {
        // monic: var^2 + b var + c; roots (-b +- sqrt(b^2-4c))/2
        RatFunc b = f.coeff(1), c = f.coeff(0);
        RatFunc disc = b * b - RatFunc::constant(table, Rational(4)) * c;
        // disc = num/den is a square iff num*den is a square polynomial.
        auto sq = Poly::sqrt(disc.num() * disc.den());
        if (sq) {
            RatFunc root_disc = RatFunc::make(*sq, disc.den());
            RatFunc half = RatFunc::constant(table, Rational(1, 2));
            out.roots.push_back((-b + root_disc) * half);
            out.roots.push_back((-b - root_disc) * half);
            out.remaining =
                FieldPoly::constant(table, f.var(), RatFunc::constant(table, Rational(1)));
            return out;
        }
        out.remaining = f;
        return out;
    }

    out.remaining = f;
    return out;
}

}  // namespace achow
