#include "achow/places.hpp"

#include <algorithm>
#include <sstream>

#include "achow/errors.hpp"

namespace achow {

Place Place::rational(const RatFunc& c, Symbol var) {
    if (c.involves(var)) throw MathError("rational place value involves the parameter");
    Place p;
    p.kind_ = Kind::FiniteRational;
    p.table_ = c.table();
    p.var_ = var;
    p.value_ = c;
    return p;
}

Place Place::cluster(const FieldPoly& q) {
    if (q.deg() < 1) throw MathError("cluster polynomial must be nonconstant");
    FieldPoly m = q.monic();
    if (!m.is_squarefree()) throw MathError("cluster polynomial must be squarefree");
    if (m.deg() == 1) {
        // A degree-1 cluster is canonically the split rational place.
        return rational(-m.coeff(0), q.var());
    }
    Place p;
    p.kind_ = Kind::FiniteCluster;
    p.table_ = q.table();
    p.var_ = q.var();
    p.poly_ = m;
    p.poly_ptr_ = std::make_shared<const FieldPoly>(m);
    return p;
}

Place Place::infinity(const TablePtr& table, Symbol var) {
    Place p;
    p.kind_ = Kind::Infinity;
    p.table_ = table;
    p.var_ = var;
    return p;
}

int Place::residue_degree() const {
    return kind_ == Kind::FiniteCluster ? poly_.deg() : 1;
}

bool Place::operator<(const Place& o) const {
    if (var_.idx != o.var_.idx) return var_.idx < o.var_.idx;
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    switch (kind_) {
        case Kind::FiniteRational:
            return value_.compare(o.value_) < 0;
        case Kind::FiniteCluster:
            return poly_.compare(o.poly_) < 0;
        case Kind::Infinity:
            return false;
    }
    return false;
}

bool Place::operator==(const Place& o) const {
    if (kind_ != o.kind_ || var_.idx != o.var_.idx) return false;
    switch (kind_) {
        case Kind::FiniteRational:
            return value_ == o.value_;
        case Kind::FiniteCluster:
            return poly_ == o.poly_;
        case Kind::Infinity:
            return true;
    }
    return false;
}

std::string Place::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::FiniteRational:
            os << "(" << table_->name(var_) << "=" << value_.to_string() << ")";
            break;
        case Kind::FiniteCluster:
            os << "(cluster: " << poly_.to_poly_primitive().to_string() << ")";
            break;
        case Kind::Infinity:
            os << "(inf)";
            break;
    }
    return os.str();
}

namespace {

// Multiplicity of the place's defining polynomial in g. For clusters, also
// checks that the cofactor is coprime to the cluster (uniformity).
int multiplicity_in(const FieldPoly& g, const Place& p) {
    if (g.is_zero()) throw MathError("multiplicity in zero polynomial");
    const TablePtr& table = g.table();
    if (p.kind() == Place::Kind::FiniteRational) {
        FieldPoly lin(table, g.var(), {-p.value(), RatFunc::constant(table, Rational(1))});
        int e = 0;
        FieldPoly r = g;
        while (true) {
            auto [q, rem] = r.divrem(lin);
            if (!rem.is_zero()) break;
            r = q;
            ++e;
        }
        return e;
    }
    int e = 0;
    FieldPoly r = g;
    while (true) {
        auto [q, rem] = r.divrem(p.poly());
        if (!rem.is_zero()) break;
        r = q;
        ++e;
    }
    FieldPoly common = FieldPoly::gcd(r, p.poly());
    if (common.deg() > 0) throw ClusterSplitNeeded{common};
    return e;
}

// Pairwise-coprime refinement of a list of weighted places: clusters are split
// against rational places lying on them and against each other by gcd.
void refine_places(std::vector<std::pair<Place, int>>& items) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < items.size() && !changed; ++i) {
            const Place& pi = items[i].first;
            if (pi.kind() != Place::Kind::FiniteCluster) continue;
            for (size_t j = 0; j < items.size() && !changed; ++j) {
                if (i == j) continue;
                const Place& pj = items[j].first;
                if (pj.var() != pi.var()) continue;
                if (pj.kind() == Place::Kind::FiniteRational) {
                    if (pi.poly().eval(pj.value()).is_zero()) {
                        const TablePtr& table = pi.table();
                        FieldPoly lin(table, pi.var(),
                                      {-pj.value(), RatFunc::constant(table, Rational(1))});
                        FieldPoly rest = pi.poly().divrem(lin).first;
                        int k = items[i].second;
                        items[i] = {Place::rational(pj.value(), pi.var()), k};
                        if (rest.deg() >= 1) items.emplace_back(Place::cluster(rest), k);
                        changed = true;
                    }
                } else if (pj.kind() == Place::Kind::FiniteCluster) {
                    FieldPoly g = FieldPoly::gcd(pi.poly(), pj.poly());
                    if (g.deg() > 0 && g.deg() < pi.poly().deg()) {
                        FieldPoly rest = pi.poly().divrem(g).first;
                        int k = items[i].second;
                        items[i] = {Place::cluster(g), k};
                        items.emplace_back(Place::cluster(rest), k);
                        changed = true;
                    }
                }
            }
        }
    }
}

}  // namespace

void Divisor::add(const Place& p, int coeff) {
    if (coeff == 0) return;
    std::vector<std::pair<Place, int>> items;
    items.reserve(c_.size() + 1);
    for (const auto& [q, k] : c_) items.emplace_back(q, k);
    items.emplace_back(p, coeff);
    refine_places(items);
    c_.clear();
    for (const auto& [q, k] : items) {
        auto [it, fresh] = c_.emplace(q, k);
        if (!fresh) it->second += k;
    }
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second == 0)
            it = c_.erase(it);
        else
            ++it;
    }
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, k] : o.c_) r.add(p, k);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, k] : o.c_) r.add(p, -k);
    return r;
}

Divisor Divisor::operator*(int k) const {
    Divisor r;
    if (k == 0) return r;
    for (const auto& [p, c] : c_) r.c_.emplace(p, c * k);
    return r;
}

int Divisor::coeff(const Place& p) const {
    auto it = c_.find(p);
    return it == c_.end() ? 0 : it->second;
}

bool Divisor::is_effective() const {
    return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second >= 0; });
}

int Divisor::degree() const {
    int d = 0;
    for (const auto& [p, k] : c_) d += k * p.residue_degree();
    return d;
}

Divisor Divisor::positive_part() const {
    Divisor r;
    for (const auto& [p, k] : c_)
        if (k > 0) r.c_.emplace(p, k);
    return r;
}

std::string Divisor::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, k] : c_) {
        if (first) {
            if (k < 0) os << "-";
        } else {
            os << (k < 0 ? " - " : " + ");
        }
        first = false;
        int a = std::abs(k);
        if (a != 1) os << a << "*";
        os << p.to_string();
    }
    return os.str();
}

int ord_at(const RatFunc& f, const Place& p) {
    if (f.is_zero()) throw MathError("ord of the zero function");
    Symbol var = p.var();
    if (p.kind() == Place::Kind::Infinity) {
        return f.den().degree(var) - f.num().degree(var);
    }
    FieldPoly n = FieldPoly::from_poly(f.num(), var);
    FieldPoly d = FieldPoly::from_poly(f.den(), var);
    return multiplicity_in(n, p) - multiplicity_in(d, p);
}

Divisor zeros_of(const RatFunc& f, Symbol var) {
    if (f.is_zero()) throw MathError("zeros of the zero function");
    Divisor d;
    if (!f.num().involves(var)) return d;
    FieldPoly n = FieldPoly::from_poly(f.num(), var);
    for (const auto& [factor, mult] : yun_decompose(n)) {
        auto split = extract_field_roots(factor);
        for (const auto& root : split.roots) d.add(Place::rational(root, var), mult);
        if (split.remaining.deg() >= 1) d.add(Place::cluster(split.remaining), mult);
    }
    return d;
}

Divisor principal_divisor(const RatFunc& f, Symbol var) {
    if (f.is_zero()) throw MathError("principal divisor of zero");
    Divisor d = zeros_of(RatFunc::from_poly(f.num()), var);
    d = d - zeros_of(RatFunc::from_poly(f.den()), var);
    int inf = f.den().degree(var) - f.num().degree(var);
    if (inf != 0) d.add(Place::infinity(f.table(), var), inf);
    return d;
}

namespace {

// Coefficient of d at a place of a refined (finer) support.
int refined_coeff(const Divisor& d, const Place& p) {
    int exact = d.coeff(p);
    if (exact != 0) return exact;
    for (const auto& [q, k] : d.coeffs()) {
        if (q.kind() != Place::Kind::FiniteCluster || q.var() != p.var()) continue;
        if (p.kind() == Place::Kind::FiniteRational) {
            if (q.poly().eval(p.value()).is_zero()) return k;
        } else if (p.kind() == Place::Kind::FiniteCluster) {
            if (q.poly().divrem(p.poly()).second.is_zero()) return k;
        }
    }
    return 0;
}

}  // namespace

Divisor divisor_sup(const std::vector<Divisor>& ds) {
    if (ds.empty()) throw MathError("divisor_sup of empty sequence");
    // Build a common refined support, then take place-wise maxima (absent = 0).
    Divisor support;
    for (const auto& d : ds)
        for (const auto& [p, k] : d.coeffs()) support.add(p, std::abs(k));
    Divisor out;
    for (const auto& [p, unused] : support.coeffs()) {
        (void)unused;
        int best = 0;
        for (const auto& d : ds) best = std::max(best, refined_coeff(d, p));
        if (best != 0) out.add(p, best);
    }
    return out;
}

bool PlaceValue::is_zero() const {
    if (infinite) return false;
    return cluster ? q.is_zero() : v.is_zero();
}

bool PlaceValue::equals_one() const {
    if (infinite) return false;
    if (cluster) return q.rep().deg() == 0 && q.rep().coeff(0).is_one();
    return v.is_one();
}

std::string PlaceValue::to_string() const {
    if (infinite) return "inf";
    return cluster ? q.to_string() : v.to_string();
}

PlaceValue evaluate_at_place(const RatFunc& f, const Place& p) {
    PlaceValue out;
    const TablePtr& table = f.table();
    Symbol var = p.var();
    switch (p.kind()) {
        case Place::Kind::FiniteRational: {
            RatFunc den = FieldPoly::from_poly(f.den(), var).eval(p.value());
            if (den.is_zero()) {
                out.infinite = true;
                return out;
            }
            RatFunc num = FieldPoly::from_poly(f.num(), var).eval(p.value());
            out.v = num / den;
            return out;
        }
        case Place::Kind::Infinity: {
            int dn = f.num().degree(var);
            int dd = f.den().degree(var);
            if (dn > dd) {
                out.infinite = true;
                return out;
            }
            if (dn < dd) {
                out.v = RatFunc::constant(table, Rational(0));
                return out;
            }
            RatFunc ln = RatFunc::from_poly(f.num().leading_coeff_in(var));
            RatFunc ld = RatFunc::from_poly(f.den().leading_coeff_in(var));
            out.v = ln / ld;
            return out;
        }
        case Place::Kind::FiniteCluster: {
            auto mod = p.poly_ptr();
            FieldPoly num = FieldPoly::from_poly(f.num(), var).divrem(*mod).second;
            FieldPoly den = FieldPoly::from_poly(f.den(), var).divrem(*mod).second;
            // Uniformity across the cluster: each restriction must be zero,
            // a unit, or trigger a split.
            for (const FieldPoly* g : {&num, &den}) {
                if (g->is_zero()) continue;
                FieldPoly c = FieldPoly::gcd(*g, *mod);
                if (c.deg() > 0) throw ClusterSplitNeeded{c};
            }
            if (den.is_zero()) {
                out.infinite = true;
                return out;
            }
            out.cluster = true;
            QuotientElem d(mod, den);
            out.q = QuotientElem(mod, num) * d.inverse();
            return out;
        }
    }
    return out;
}

}  // namespace achow
