#pragma once

#include <memory>
#include <string>

#include "achow/field_poly.hpp"

namespace achow {

// Element of k[theta]/(q) where q is monic and squarefree in the distinguished
// symbol; the representative has degree < deg q.
class QuotientElem {
public:
    QuotientElem() = default;
    QuotientElem(std::shared_ptr<const FieldPoly> modulus, const FieldPoly& rep);
    static QuotientElem reduce(const std::shared_ptr<const FieldPoly>& modulus,
                               const FieldPoly& raw);
    static QuotientElem from_scalar(const std::shared_ptr<const FieldPoly>& modulus,
                                    const RatFunc& c);

    const FieldPoly& rep() const { return rep_; }
    const FieldPoly& modulus() const { return *mod_; }
    const std::shared_ptr<const FieldPoly>& modulus_ptr() const { return mod_; }
    bool is_zero() const { return rep_.is_zero(); }

    QuotientElem operator+(const QuotientElem& o) const;
    QuotientElem operator-(const QuotientElem& o) const;
    QuotientElem operator*(const QuotientElem& o) const;
    QuotientElem operator-() const;
    QuotientElem operator*(const RatFunc& s) const;
    // Throws ClusterSplitNeeded when the representative is a zero divisor,
    // MathError on inverting zero.
    QuotientElem inverse() const;

    // Trace of multiplication by this element on k[theta]/(q) as a k-vector
    // space, via Newton power sums of the modulus.
    RatFunc trace() const;

    bool operator==(const QuotientElem& o) const { return rep_ == o.rep_; }
    std::string to_string() const;

private:
    std::shared_ptr<const FieldPoly> mod_;
    FieldPoly rep_;
};

}  // namespace achow
