#pragma once

#include <map>
#include <string>

#include "achow/poly.hpp"

namespace achow {

// Normalized quotient of polynomials: gcd(num, den) = 1, den has coprime
// integer coefficients and a positive leading coefficient.
class RatFunc {
public:
    RatFunc() = default;  // zero over a null table; usable once assigned
    static RatFunc make(const Poly& num, const Poly& den);
    static RatFunc from_poly(const Poly& p);
    static RatFunc constant(const TablePtr& table, const Rational& c);
    static RatFunc variable(const TablePtr& table, Symbol s);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const TablePtr& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const;  // no symbols at all
    std::optional<Rational> as_rational() const;
    bool involves(Symbol s) const { return num_.involves(s) || den_.involves(s); }
    bool is_poly() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(int e) const;

    RatFunc derivative(Symbol s) const;

    // Simultaneous substitution; symbols absent from the map stay themselves.
    // Throws MathError if the substituted denominator vanishes.
    RatFunc substitute(const std::map<uint32_t, RatFunc>& images) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    int compare(const RatFunc& o) const;
    std::string to_string() const;

private:
    Poly num_, den_;
};

RatFunc operator*(const Rational& c, const RatFunc& f);

}  // namespace achow
