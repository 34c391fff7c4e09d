#include "achow/ratfunc.hpp"

#include <sstream>

#include "achow/errors.hpp"

namespace achow {

RatFunc RatFunc::make(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw MathError("zero denominator");
    RatFunc f;
    if (num.is_zero()) {
        f.num_ = num;
        f.den_ = Poly(den.table(), Rational(1));
        return f;
    }
    Poly n = num, d = den;
    Poly g = Poly::gcd(n, d);
    if (!g.is_constant()) {
        n = n.divexact(g);
        d = d.divexact(g);
    }
    Rational dc = d.content_signed();
    f.den_ = d.primitive();
    f.num_ = n * (1 / dc);
    return f;
}

RatFunc RatFunc::from_poly(const Poly& p) {
    RatFunc f;
    f.num_ = p;
    f.den_ = Poly(p.table(), Rational(1));
    return f;
}

RatFunc RatFunc::constant(const TablePtr& table, const Rational& c) {
    return from_poly(Poly(table, c));
}

RatFunc RatFunc::variable(const TablePtr& table, Symbol s) {
    return from_poly(Poly::variable(table, s));
}

bool RatFunc::is_one() const {
    auto n = num_.as_constant();
    auto d = den_.as_constant();
    return n && d && *n == 1 && *d == 1;
}

bool RatFunc::is_constant() const {
    return num_.is_constant() && den_.is_constant();
}

std::optional<Rational> RatFunc::as_rational() const {
    auto n = num_.as_constant();
    auto d = den_.as_constant();
    if (!n || !d) return std::nullopt;
    return *n / *d;
}

bool RatFunc::is_poly() const {
    auto d = den_.as_constant();
    return d.has_value();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return make(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return make(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw MathError("division by zero");
    return make(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc f;
    f.num_ = -num_;
    f.den_ = den_;
    return f;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    return make(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return constant(table(), Rational(1));
    RatFunc base = e < 0 ? inverse() : *this;
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    RatFunc r;
    r.num_ = base.num_.pow(k);
    r.den_ = base.den_.pow(k);
    return make(r.num_, r.den_);
}

RatFunc RatFunc::derivative(Symbol s) const {
    // (n'd - nd')/d^2
    Poly n = num_.derivative(s) * den_ - num_ * den_.derivative(s);
    return make(n, den_ * den_);
}

namespace {

RatFunc eval_poly(const Poly& p, const std::map<uint32_t, RatFunc>& images) {
    const TablePtr& table = p.table();
    RatFunc acc = RatFunc::constant(table, Rational(0));
    // Memoize powers of each substituted symbol.
    std::map<uint32_t, std::vector<RatFunc>> powers;
    for (const auto& [e, c] : p.terms()) {
        RatFunc term = RatFunc::constant(table, c);
        Exponents rest(e.size(), 0);
        bool any_rest = false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = images.find(static_cast<uint32_t>(i));
            if (it == images.end()) {
                rest[i] = e[i];
                any_rest = true;
                continue;
            }
            auto& pw = powers[static_cast<uint32_t>(i)];
            if (pw.empty()) pw.push_back(RatFunc::constant(table, Rational(1)));
            while (pw.size() <= e[i]) pw.push_back(pw.back() * it->second);
            term = term * pw[e[i]];
        }
        if (any_rest) term = term * RatFunc::from_poly(Poly::monomial(table, rest, Rational(1)));
        acc = acc + term;
    }
    return acc;
}

}  // namespace

RatFunc RatFunc::substitute(const std::map<uint32_t, RatFunc>& images) const {
    RatFunc n = eval_poly(num_, images);
    RatFunc d = eval_poly(den_, images);
    if (d.is_zero()) throw MathError("substitution hits a pole");
    return n / d;
}

int RatFunc::compare(const RatFunc& o) const {
    int c = num_.compare(o.num_);
    if (c != 0) return c;
    return den_.compare(o.den_);
}

std::string RatFunc::to_string() const {
    if (den_.as_constant() && *den_.as_constant() == 1) return num_.to_string();
    std::ostringstream os;
    os << "(" << num_.to_string() << ")/(" << den_.to_string() << ")";
    return os.str();
}

RatFunc operator*(const Rational& c, const RatFunc& f) {
    return RatFunc::constant(f.table(), c) * f;
}

}  // namespace achow
