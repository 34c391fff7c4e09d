#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "achow/quotient.hpp"

namespace achow {

// A closed point of P^1 over k in the given parameter symbol: a k-rational
// point, a cluster given by a monic squarefree polynomial (a possibly
// reducible closed point kept unsplit), or the point at infinity.
class Place {
public:
    enum class Kind { FiniteRational, FiniteCluster, Infinity };

    static Place rational(const RatFunc& c, Symbol var);
    static Place cluster(const FieldPoly& q);  // pre: squarefree, deg >= 1
    static Place infinity(const TablePtr& table, Symbol var);

    Kind kind() const { return kind_; }
    const RatFunc& value() const { return value_; }       // FiniteRational
    const FieldPoly& poly() const { return poly_; }       // FiniteCluster
    const std::shared_ptr<const FieldPoly>& poly_ptr() const { return poly_ptr_; }
    Symbol var() const { return var_; }
    const TablePtr& table() const { return table_; }
    int residue_degree() const;  // 1, deg q, or 1

    bool operator<(const Place& o) const;
    bool operator==(const Place& o) const;
    std::string to_string() const;

private:
    Kind kind_ = Kind::Infinity;
    TablePtr table_;
    Symbol var_{};
    RatFunc value_;
    FieldPoly poly_;
    std::shared_ptr<const FieldPoly> poly_ptr_;
};

// Z-linear combination of places, clusters kept pairwise coprime and split
// away from any rational place present.
class Divisor {
public:
    Divisor() = default;

    void add(const Place& p, int coeff);
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator*(int k) const;

    const std::map<Place, int>& coeffs() const { return c_; }
    int coeff(const Place& p) const;
    bool is_zero() const { return c_.empty(); }
    bool is_effective() const;
    // Total degree, cluster places weighted by their residue degree.
    int degree() const;
    Divisor positive_part() const;

    bool operator==(const Divisor& o) const { return c_ == o.c_; }
    std::string to_string() const;

private:
    std::map<Place, int> c_;
    void insert_split(const Place& p, int coeff);
};

// Valuation of f at p. f must be a rational function of `var` over k.
// Throws MathError on f == 0 and ClusterSplitNeeded when the valuation is not
// uniform across the cluster.
int ord_at(const RatFunc& f, const Place& p);

// Divisor of zeros minus poles over all places of P^1 including infinity.
Divisor principal_divisor(const RatFunc& f, Symbol var);

// Place-wise maximum.
Divisor divisor_sup(const std::vector<Divisor>& ds);

// Exact value of f at a place: a field element, a quotient-ring element for
// clusters, or infinite. Throws ClusterSplitNeeded on non-uniform clusters.
struct PlaceValue {
    bool infinite = false;
    bool cluster = false;
    RatFunc v;       // when !cluster
    QuotientElem q;  // when cluster
    bool is_zero() const;
    bool equals_one() const;
    std::string to_string() const;
};
PlaceValue evaluate_at_place(const RatFunc& f, const Place& p);

// Zero and polar places of f in var, each with its multiplicity; infinity
// included. Rational roots are split off; the rest stay clusters.
Divisor zeros_of(const RatFunc& f, Symbol var);

}  // namespace achow
