#pragma once

#include <string>
#include <vector>

#include "achow/places.hpp"

namespace achow {

// Exact Laurent expansion of a rational function at a place, in the local
// parameter s (s = t - c, s = t - theta over the cluster ring, or s = 1/t at
// infinity). Coefficients are exact from exponent `lowest` through `upto`.
struct LaurentSeries {
    Place place;
    int lowest = 0;  // meaningful only when not identically zero
    int upto = 0;
    bool cluster = false;
    std::vector<RatFunc> k_coeffs;       // when !cluster
    std::vector<QuotientElem> q_coeffs;  // when cluster
    bool is_zero() const { return cluster ? q_coeffs.empty() : k_coeffs.empty(); }
    // Coefficient of s^e (zero outside the stored window; pre: e <= upto).
    RatFunc k_at(int e) const;
    QuotientElem q_at(int e) const;
    std::string to_string() const;
};

// Expansion of f at p with coefficients exact through s^upto. The lowest
// exponent equals ord_at(f, p). Throws ClusterSplitNeeded on non-uniform
// cluster places.
LaurentSeries expand_at(const RatFunc& f, const Place& p, int upto);

// Residue of the 1-form g d(var) at p: the s^{-1} coefficient of the local
// expansion, composed with the field trace at cluster places. At infinity the
// chart is s = 1/var, d(var) = -s^{-2} ds.
RatFunc residue_1form(const RatFunc& g, const Place& p);

// Sum of residues of g d(var) over all places of P^1. Zero for every g by
// reciprocity on the proper curve P^1.
RatFunc reciprocity_check(const RatFunc& g, Symbol var);

}  // namespace achow
