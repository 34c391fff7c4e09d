#include "achow/quotient.hpp"

#include "achow/errors.hpp"

namespace achow {

QuotientElem::QuotientElem(std::shared_ptr<const FieldPoly> modulus, const FieldPoly& rep)
    : mod_(std::move(modulus)), rep_(rep) {
    if (!mod_ || mod_->deg() < 1) throw MathError("quotient modulus must be nonconstant");
    if (!mod_->is_monic()) throw MathError("quotient modulus must be monic");
    if (rep_.deg() >= mod_->deg()) throw MathError("representative not reduced");
}

QuotientElem QuotientElem::reduce(const std::shared_ptr<const FieldPoly>& modulus,
                                  const FieldPoly& raw) {
    return QuotientElem(modulus, raw.divrem(*modulus).second);
}

QuotientElem QuotientElem::from_scalar(const std::shared_ptr<const FieldPoly>& modulus,
                                       const RatFunc& c) {
    return QuotientElem(modulus, FieldPoly::constant(modulus->table(), modulus->var(), c));
}

QuotientElem QuotientElem::operator+(const QuotientElem& o) const {
    return QuotientElem(mod_ ? mod_ : o.mod_, rep_ + o.rep_);
}

QuotientElem QuotientElem::operator-(const QuotientElem& o) const {
    return QuotientElem(mod_ ? mod_ : o.mod_, rep_ - o.rep_);
}

QuotientElem QuotientElem::operator*(const QuotientElem& o) const {
    return reduce(mod_ ? mod_ : o.mod_, rep_ * o.rep_);
}

QuotientElem QuotientElem::operator-() const { return QuotientElem(mod_, -rep_); }

QuotientElem QuotientElem::operator*(const RatFunc& s) const {
    return QuotientElem(mod_, rep_ * s);
}

QuotientElem QuotientElem::inverse() const {
    if (rep_.is_zero()) throw MathError("inverse of zero in quotient ring");
    auto [g, s, t] = FieldPoly::ext_gcd(rep_, *mod_);
    if (g.deg() > 0) {
        // rep is a zero divisor: g is a proper factor of the modulus.
        throw ClusterSplitNeeded{g.monic()};
    }
    // g == 1, so s*rep == 1 mod q.
    return reduce(mod_, s);
}

RatFunc QuotientElem::trace() const {
    const FieldPoly& q = *mod_;
    const TablePtr& table = q.table();
    int d = q.deg();
    // Newton power sums p_j of the roots of the monic q, for j = 0..d-1:
    // p_j = -j*c_{d-j} - sum_{k=1}^{j-1} c_{d-k} p_{j-k}, c_i = coeff of theta^i.
    std::vector<RatFunc> p(static_cast<size_t>(d));
    p[0] = RatFunc::constant(table, Rational(d));
    for (int j = 1; j < d; ++j) {
        RatFunc acc = RatFunc::constant(table, Rational(-j)) * q.coeff(static_cast<size_t>(d - j));
        for (int k = 1; k < j; ++k)
            acc = acc - q.coeff(static_cast<size_t>(d - k)) * p[static_cast<size_t>(j - k)];
        p[static_cast<size_t>(j)] = acc;
    }
    RatFunc out = RatFunc::constant(table, Rational(0));
    for (int j = 0; j < d; ++j) out = out + rep_.coeff(static_cast<size_t>(j)) * p[static_cast<size_t>(j)];
    return out;
}

std::string QuotientElem::to_string() const { return rep_.to_string(); }

}  // namespace achow
