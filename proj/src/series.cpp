#include "achow/series.hpp"

#include <sstream>

#include "achow/errors.hpp"

namespace achow {

namespace {

// Truncated power-series arithmetic over a coefficient ring R that provides
// +, -, *, inverse() and is_zero().
template <class R>
std::vector<R> series_mul(const std::vector<R>& a, const std::vector<R>& b, size_t len,
                          const R& zero) {
    std::vector<R> out(len, zero);
    for (size_t i = 0; i < a.size() && i < len; ++i) {
        for (size_t j = 0; j < b.size() && i + j < len; ++j) {
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return out;
}

template <class R>
std::vector<R> series_inv(const std::vector<R>& a, size_t len, const R& zero) {
    // pre: a[0] is a unit.
    std::vector<R> out(len, zero);
    R inv0 = a[0].inverse();
    out[0] = inv0;
    for (size_t k = 1; k < len; ++k) {
        R acc = zero;
        for (size_t j = 1; j <= k && j < a.size(); ++j) acc = acc + a[j] * out[k - j];
        out[k] = zero - inv0 * acc;
    }
    return out;
}

template <class R>
size_t first_nonzero(const std::vector<R>& v) {
    size_t i = 0;
    while (i < v.size() && v[i].is_zero()) ++i;
    return i;
}

// Shared driver: given the local numerator and denominator coefficient
// sequences (exact polynomials in s), produce the Laurent coefficients of
// num/den from the valuation through `upto`.
template <class R>
std::pair<int, std::vector<R>> laurent_divide(std::vector<R> num, std::vector<R> den, int upto,
                                              const R& zero) {
    size_t vd = first_nonzero(den);
    den.erase(den.begin(), den.begin() + static_cast<long>(vd));
    size_t vn = first_nonzero(num);
    if (vn == num.size()) return {0, {}};  // identically zero
    num.erase(num.begin(), num.begin() + static_cast<long>(vn));
    int lowest = static_cast<int>(vn) - static_cast<int>(vd);
    if (upto < lowest) return {lowest, {}};
    size_t len = static_cast<size_t>(upto - lowest + 1);
    std::vector<R> dinv = series_inv(den, len, zero);
    std::vector<R> out = series_mul(num, dinv, len, zero);
    return {lowest, out};
}

std::vector<RatFunc> poly_taylor(const Poly& p, Symbol var, const RatFunc& at) {
    return FieldPoly::from_poly(p, var).taylor_at(at);
}

// Coefficients of g(theta + s) in s, reduced into k[theta]/(q). Exact via
// iterated derivatives divided by factorials.
std::vector<QuotientElem> cluster_taylor(const Poly& p, Symbol var,
                                         const std::shared_ptr<const FieldPoly>& mod) {
    FieldPoly f = FieldPoly::from_poly(p, var);
    std::vector<QuotientElem> out;
    Rational fact(1);
    FieldPoly g = f;
    for (int j = 0; j <= f.deg(); ++j) {
        if (j > 0) {
            g = g.derivative();
            fact *= j;
        }
        FieldPoly scaled = g * RatFunc::constant(f.table(), 1 / fact);
        out.push_back(QuotientElem::reduce(mod, scaled));
    }
    return out;
}

std::vector<RatFunc> reversed_coeffs(const Poly& p, Symbol var) {
    FieldPoly f = FieldPoly::from_poly(p, var);
    std::vector<RatFunc> out(f.coeffs().rbegin(), f.coeffs().rend());
    return out;
}

}  // namespace

RatFunc LaurentSeries::k_at(int e) const {
    if (is_zero() || e < lowest || e > upto) return RatFunc::constant(place.table(), Rational(0));
    return k_coeffs[static_cast<size_t>(e - lowest)];
}

QuotientElem LaurentSeries::q_at(int e) const {
    if (is_zero() || e < lowest || e > upto)
        return QuotientElem::from_scalar(place.poly_ptr(),
                                         RatFunc::constant(place.table(), Rational(0)));
    return q_coeffs[static_cast<size_t>(e - lowest)];
}

std::string LaurentSeries::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = lowest; e <= upto; ++e) {
        std::string c = cluster ? q_at(e).to_string() : k_at(e).to_string();
        if (c == "0") continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (e != 0) os << "*s^" << e;
    }
    if (first) os << "0";
    os << " + O(s^" << (upto + 1) << ")";
    return os.str();
}

LaurentSeries expand_at(const RatFunc& f, const Place& p, int upto) {
    LaurentSeries out;
    out.place = p;
    out.upto = upto;
    const TablePtr& table = p.table();
    Symbol var = p.var();
    if (f.is_zero()) return out;

    if (p.kind() == Place::Kind::FiniteCluster) {
        out.cluster = true;
        auto mod = p.poly_ptr();
        auto num = cluster_taylor(f.num(), var, mod);
        auto den = cluster_taylor(f.den(), var, mod);
        // Uniformity of the valuation: the first nonzero denominator (and
        // numerator) coefficient must be a unit; inverse() raises a split
        // request otherwise. Leading numerator zero-divisors also split.
        QuotientElem zero = QuotientElem::from_scalar(mod, RatFunc::constant(table, Rational(0)));
        size_t vn = first_nonzero(num);
        if (vn < num.size()) {
            FieldPoly g = FieldPoly::gcd(num[vn].rep(), *mod);
            if (g.deg() > 0) throw ClusterSplitNeeded{g};
        }
        auto [lowest, coeffs] = laurent_divide(num, den, upto, zero);
        out.lowest = lowest;
        out.q_coeffs = std::move(coeffs);
        return out;
    }

    std::vector<RatFunc> num, den;
    if (p.kind() == Place::Kind::FiniteRational) {
        num = poly_taylor(f.num(), var, p.value());
        den = poly_taylor(f.den(), var, p.value());
    } else {
        // Chart s = 1/var: f(1/s) = s^(deg den - deg num) * rev(num)/rev(den).
        num = reversed_coeffs(f.num(), var);
        den = reversed_coeffs(f.den(), var);
        int shift = f.den().degree(var) - f.num().degree(var);
        if (shift > 0) {
            num.insert(num.begin(), static_cast<size_t>(shift),
                       RatFunc::constant(table, Rational(0)));
        } else if (shift < 0) {
            den.insert(den.begin(), static_cast<size_t>(-shift),
                       RatFunc::constant(table, Rational(0)));
        }
    }
    RatFunc zero = RatFunc::constant(table, Rational(0));
    auto [lowest, coeffs] = laurent_divide(num, den, upto, zero);
    out.lowest = lowest;
    out.k_coeffs = std::move(coeffs);
    return out;
}

RatFunc residue_1form(const RatFunc& g, const Place& p) {
    const TablePtr& table = p.table();
    if (g.is_zero()) return RatFunc::constant(table, Rational(0));
    if (p.kind() == Place::Kind::Infinity) {
        // g d(var) = -s^{-2} g(1/s) ds: residue is -[s^1] g(1/s).
        LaurentSeries s = expand_at(g, p, 1);
        return -s.k_at(1);
    }
    LaurentSeries s = expand_at(g, p, -1);
    if (p.kind() == Place::Kind::FiniteCluster) return s.q_at(-1).trace();
    return s.k_at(-1);
}

RatFunc reciprocity_check(const RatFunc& g, Symbol var) {
    const TablePtr& table = g.table();
    RatFunc total = residue_1form(g, Place::infinity(table, var));
    if (g.den().involves(var)) {
        FieldPoly d = FieldPoly::from_poly(g.den(), var);
        for (const auto& [factor, mult] : yun_decompose(d)) {
            (void)mult;
            auto split = extract_field_roots(factor);
            for (const auto& root : split.roots)
                total = total + residue_1form(g, Place::rational(root, var));
            if (split.remaining.deg() >= 1)
                total = total + residue_1form(g, Place::cluster(split.remaining));
        }
    }
    return total;
}

}  // namespace achow
