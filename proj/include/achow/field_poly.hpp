#pragma once

#include <string>
#include <utility>
#include <vector>

#include "achow/ratfunc.hpp"

namespace achow {

// Dense univariate polynomial in `var` whose coefficients are rational
// functions in the remaining symbols.
class FieldPoly {
public:
    FieldPoly() = default;
    FieldPoly(TablePtr table, Symbol var) : table_(std::move(table)), var_(var) {}
    FieldPoly(TablePtr table, Symbol var, std::vector<RatFunc> coeffs);
    static FieldPoly constant(const TablePtr& table, Symbol var, const RatFunc& c);
    static FieldPoly variable(const TablePtr& table, Symbol var);
    // View of a multivariate polynomial as univariate in var.
    static FieldPoly from_poly(const Poly& p, Symbol var);
    // Numerator of f viewed in var (poles of f in var are ignored).
    static FieldPoly numerator(const RatFunc& f, Symbol var);

    const TablePtr& table() const { return table_; }
    Symbol var() const { return var_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    RatFunc coeff(size_t k) const;
    const RatFunc& lc() const;
    bool is_monic() const;

    FieldPoly operator+(const FieldPoly& o) const;
    FieldPoly operator-(const FieldPoly& o) const;
    FieldPoly operator*(const FieldPoly& o) const;
    FieldPoly operator-() const;
    FieldPoly operator*(const RatFunc& s) const;
    FieldPoly pow(unsigned e) const;

    FieldPoly monic() const;
    FieldPoly derivative() const;
    std::pair<FieldPoly, FieldPoly> divrem(const FieldPoly& d) const;
    static FieldPoly gcd(const FieldPoly& a, const FieldPoly& b);  // monic (or 0)
    // g = gcd(a,b) monic, with s*a + t*b = g.
    static std::tuple<FieldPoly, FieldPoly, FieldPoly> ext_gcd(const FieldPoly& a,
                                                               const FieldPoly& b);
    bool is_squarefree() const;

    RatFunc eval(const RatFunc& x) const;
    // Coefficients of f(c + s) as a polynomial in s.
    std::vector<RatFunc> taylor_at(const RatFunc& c) const;

    // Multiply through by the lcm of coefficient denominators; primitive result.
    Poly to_poly_primitive() const;
    RatFunc to_ratfunc() const;

    bool operator==(const FieldPoly& o) const;
    bool operator!=(const FieldPoly& o) const { return !(*this == o); }
    int compare(const FieldPoly& o) const;
    std::string to_string() const;

private:
    TablePtr table_;
    Symbol var_{};
    std::vector<RatFunc> c_;  // c_[k] multiplies var^k; c_.back() nonzero
    void trim();
};

// Yun's algorithm over the coefficient field: monic pairwise-coprime
// squarefree factors f_i with multiplicities, prod f_i^{m_i} = input/lc-part.
std::vector<std::pair<FieldPoly, int>> yun_decompose(const FieldPoly& f);

// Roots of a squarefree polynomial that lie in the coefficient field:
// degree-1 factors directly, quadratics via a perfect-square discriminant,
// higher degrees with purely rational coefficients via integer root search.
// `remaining` is the (monic) unsplit part.
struct LinearSplit {
    std::vector<RatFunc> roots;
    FieldPoly remaining;
};
LinearSplit extract_field_roots(const FieldPoly& squarefree);

// Raised when a computation at a cluster place discovers that the defining
// polynomial must be split into the carried factor and its cofactor.
struct ClusterSplitNeeded {
    FieldPoly factor;  // monic, proper divisor of the cluster polynomial
};

}  // namespace achow
