#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "achow/symbol_table.hpp"

namespace achow {

using Rational = mpq_class;

std::string rat_to_string(const Rational& r);
Rational rat_pow(const Rational& r, unsigned e);
bool rat_is_square(const Rational& r);
Rational rat_sqrt(const Rational& r);  // pre: rat_is_square(r)

using Exponents = std::vector<uint32_t>;

// Graded lexicographic: total degree first, then lex in table order.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over Q in the symbols of a shared table.
// No zero coefficients are stored; term order is graded lexicographic.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    Poly() = default;
    explicit Poly(TablePtr table) : table_(std::move(table)) {}
    Poly(TablePtr table, const Rational& c);
    static Poly variable(const TablePtr& table, Symbol s);
    static Poly monomial(const TablePtr& table, Exponents e, const Rational& c);

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Returns the value when the polynomial is constant (zero poly -> 0).
    std::optional<Rational> as_constant() const;
    bool involves(Symbol s) const;
    std::vector<Symbol> symbols() const;
    int degree(Symbol s) const;  // -1 for the zero polynomial
    int total_degree() const;    // -1 for the zero polynomial

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned e) const;

    Poly derivative(Symbol s) const;

    // Coefficients of powers of s; entry k is a Poly not involving s.
    std::vector<Poly> coeffs_in(Symbol s) const;
    static Poly from_coeffs_in(const TablePtr& table, Symbol s, const std::vector<Poly>& cs);
    Poly leading_coeff_in(Symbol s) const;

    // content * sign of the leading coefficient; dividing by it yields
    // coprime integer coefficients with a positive leading one.
    Rational content_signed() const;
    Poly primitive() const;

    static Poly gcd(const Poly& a, const Poly& b);
    Poly divexact(const Poly& d) const;  // pre: d divides *this exactly

    // Exact polynomial square root, if one exists.
    static std::optional<Poly> sqrt(const Poly& p);

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    int compare(const Poly& o) const;  // deterministic total order
    std::string to_string() const;

private:
    TablePtr table_;
    TermMap terms_;
    void add_term(const Exponents& e, const Rational& c);
    friend class RatFunc;
};

// Squarefree decomposition of p viewed as univariate in `main` over the
// fraction field of the remaining symbols. Factors are primitive integer
// polynomials, pairwise coprime and squarefree, and
// prod factor_i^mult_i * (a factor not involving `main`) == p.
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p, Symbol main);

}  // namespace achow
